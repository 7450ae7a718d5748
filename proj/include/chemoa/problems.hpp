#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "chemoa/point.hpp"
#include "chemoa/rocch.hpp"

namespace chemoa {

/// Real vector for the benchmark functions, bit mask for rule subsets. Only
/// the member matching the problem's genotype kind is used.
struct Genotype {
  std::vector<double> real;
  std::vector<std::uint8_t> bits;

  friend bool operator==(const Genotype&, const Genotype&) = default;
};

enum class GenotypeKind { Real, Bits };

/// Synthetic rule base: rule i catches spam with rate w_i and wrongly flags
/// ham with rate v_i.
class RuleModel {
 public:
  /// w_i ~ U[0.05, 0.6], v_i ~ U[0.001, 0.05] from the seeded generator.
  RuleModel(std::size_t rule_count, std::uint64_t seed);
  /// Explicit rates, each strictly inside (0, 1).
  RuleModel(std::vector<double> catch_rates, std::vector<double> flag_rates);

  std::size_t size() const { return w_.size(); }
  double catch_rate(std::size_t i) const { return w_[i]; }
  double flag_rate(std::size_t i) const { return v_[i]; }

  /// (fpr, fnr, ccr) of the rules selected by mask.
  ObjectiveVector evaluate(std::span<const std::uint8_t> mask) const;

 private:
  std::vector<double> w_;
  std::vector<double> v_;
};

/// Benchmark variants 1..3. Throw std::invalid_argument outside [0,1]^3.
ObjectiveVector eval_zejd(int variant, std::span<const double> x);
ObjectiveVector eval_zed(int variant, std::span<const double> x);
/// Objectives before the final clamp to [0,1]. ZED values never need it.
ObjectiveVector eval_zejd_unclamped(int variant, std::span<const double> x);

ObjectiveVector eval_rule_subset(const RuleModel& model, std::span<const std::uint8_t> mask);

enum class ProblemFamily { Zejd, Zed, Rules };

class Problem {
 public:
  static Problem zejd(int variant);
  static Problem zed(int variant);
  static Problem rules(std::size_t rule_count, std::uint64_t seed);
  /// Accepts zejd1..3, zed1..3 and rules(n,seed). Throws std::invalid_argument.
  static Problem from_name(std::string_view name);

  const std::string& name() const { return name_; }
  ProblemFamily family() const { return family_; }
  int variant() const { return variant_; }
  GenotypeKind genotype_kind() const { return family_ == ProblemFamily::Rules ? GenotypeKind::Bits : GenotypeKind::Real; }
  std::size_t dimension() const;
  const RocSpace& space() const { return space_; }
  const RuleModel* rule_model() const { return rules_.get(); }

  ObjectiveVector evaluate(const Genotype& g) const;

  /// True for the dented variants (2 and 3 of each benchmark family).
  bool has_dent() const;
  /// Genotype lies strictly inside the dent with the given margin: every
  /// branch condition of the dented formula holds with that much room.
  bool in_dent(std::span<const double> x, double margin = 0.02) const;

 private:
  Problem(std::string name, ProblemFamily family, int variant, RocSpace space)
      : name_(std::move(name)), family_(family), variant_(variant), space_(std::move(space)) {}

  std::string name_;
  ProblemFamily family_;
  int variant_ = 0;
  RocSpace space_;
  std::shared_ptr<const RuleModel> rules_;
};

/// Parameter rectangle of (x1, x2) whose x3 = 0 image holds the Pareto front.
struct FrontDomain {
  double x1_lo, x1_hi, x2_lo, x2_hi;
};
FrontDomain front_domain(const Problem& problem);

/// count objective vectors on the x3 = 0 surface: a k x k grid over the
/// front domain (k = floor(sqrt(count))) followed by seeded uniform samples.
/// Benchmark problems only; throws std::invalid_argument otherwise.
std::vector<ObjectiveVector> sample_true_front(const Problem& problem, std::size_t count, std::uint64_t seed);

}  // namespace chemoa
