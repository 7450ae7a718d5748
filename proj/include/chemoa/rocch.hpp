#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "chemoa/geometry.hpp"

namespace chemoa {

enum class RocLabel { Augmented, ThreeClass };

/// ROC space semantics: optimization sense, reference classifiers and the
/// feasible side of the random-guess plane.
///
/// Augmented space is (fpr, fnr, ccr), minimized, with reference points
/// (1,0,0), (0,1,0), (1,0,1), (0,1,1) and feasible side fpr + fnr <= 1.
/// Three-class space is (tar, tbr, tcr), maximized, with reference points
/// (1,0,0), (0,1,0), (0,0,1) and feasible side tar + tbr + tcr >= 1.
class RocSpace {
 public:
  static RocSpace augmented();
  static RocSpace three_class();

  RocLabel label() const { return label_; }
  Sense sense() const { return sense_; }
  std::span<const Vec3> references() const { return references_; }
  /// Halfspace whose members are on the feasible side of the guess plane.
  const Halfspace& feasible_side() const { return feasible_; }
  /// (0,0,0) for minimization, (1,1,1) for maximization.
  Vec3 perfect_point() const;
  /// Largest attainable VUS: 1/2 (augmented) or 5/6 (three-class).
  double max_vus() const;
  std::string_view name() const;

  /// a weakly dominates b under this space's sense.
  bool weakly_dominates(const Vec3& a, const Vec3& b) const;

 private:
  RocSpace(RocLabel label, Sense sense, std::vector<Vec3> refs, Halfspace feasible);

  RocLabel label_;
  Sense sense_;
  std::vector<Vec3> references_;
  Halfspace feasible_;
};

/// Volume of the feasible part of the unit box weakly dominated by the
/// convex hull of points and the reference set.
double vus(std::span<const Vec3> points, const RocSpace& space);

/// Per-point VUS contributions: vus(points) - vus(points without i).
std::vector<double> delta_vus(std::span<const Vec3> points, const RocSpace& space);

/// VUS of a fixed point set together with exact bookkeeping of which points
/// generate the extreme vertices of the dominated closure. Removing a point
/// that generates no such vertex cannot change the volume; those removals
/// are answered without recomputation.
///
/// The volume is a function of the point *set*: input order, duplicate
/// points and dominated points do not affect the bits of the result.
class VusState {
 public:
  VusState(std::span<const Vec3> points, const RocSpace& space);

  double value() const { return value_; }
  std::size_t size() const { return points_.size(); }

  /// True when removing points[i] provably leaves the VUS unchanged.
  bool removal_is_neutral(std::size_t i) const { return !critical_[i]; }

  /// VUS of the set with points[i] removed.
  double value_without(std::size_t i) const;

  /// VUS lost by removing points[i], found by re-covering only the hull
  /// region around the closure vertices that points[i] alone generates.
  /// Agrees with value() - value_without(i) up to rounding; falls back to
  /// that recomputation when the local patch is inconsistent.
  double contribution(std::size_t i) const;

  /// Closure vertices, their generators and the hull facets over them.
  struct Trace {
    std::vector<Vec3> pushes;                  // distinct closure candidates
    std::vector<std::uint32_t> gen_first;      // generators of pushes[u]:
    std::vector<std::uint32_t> gens;           //   gens[gen_first[u] .. gen_first[u+1])
    std::vector<std::uint32_t> group_of;       // group of each input point
    std::vector<char> is_vertex;               // per push
    std::vector<std::array<std::uint32_t, 3>> facets;  // push indices, outward
    std::vector<std::uint32_t> incident_first, incident;  // facets around each push
    std::vector<std::uint32_t> sole_first, sole;          // pushes with a group as sole generator
  };

 private:
  std::vector<Vec3> points_;
  RocSpace space_;
  std::vector<char> critical_;
  double value_ = 0.0;
  Trace trace_;
};

/// Peels points into convex-hull levels. Each round builds the hull of the
/// remaining points plus the references; remaining points that are hull
/// vertices optimal for some nonnegative weighting of the objectives (the
/// vertex normal cone meets the improving orthant, as it does for every
/// vertex of an improving facet) form the next level. When a
/// round yields nothing, or the hull is degenerate, the remaining points form
/// one final level. Returned indices refer to the input order.
std::vector<std::vector<std::size_t>> hull_levels(std::span<const Vec3> points, const RocSpace& space);

enum class OperatingMode { Accuracy, Cost };

struct OperatingPointQuery {
  std::array<double, 3> priors{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
  std::array<double, 3> costs{1.0, 1.0, 1.0};
  std::size_t instances = 1;
  OperatingMode mode = OperatingMode::Accuracy;

  /// Throws std::invalid_argument unless priors are nonnegative and sum to 1
  /// within 1e-12, costs are nonnegative and instances is positive.
  void validate() const;
};

/// Expected accuracy p(a) tar + p(b) tbr + p(c) tcr.
double expected_accuracy(const Vec3& rates, const OperatingPointQuery& q);
/// Expected misclassification cost N sum_k p(k) c(k) (1 - rate_k).
double expected_cost(const Vec3& rates, const OperatingPointQuery& q);

struct OperatingPoint {
  Vec3 point;
  double score = 0.0;
};

/// Scores the references and every first-level hull vertex and
/// returns the best one (highest accuracy or lowest cost). Ties go to the
/// lexicographically smallest vector. Three-class space only.
OperatingPoint select_operating_point(std::span<const Vec3> points, const RocSpace& space,
                                      const OperatingPointQuery& query);

}  // namespace chemoa
