#include "chemoa/problems.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

#include "chemoa/random.hpp"

namespace chemoa {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

// ZEJD2 / ZED2 dent: threshold a and slope lambda.
constexpr double kZejdA = 0.3;
constexpr double kZedA = 0.4;
constexpr double kLambda = 0.5;
// ZEJD3 / ZED3 bump: amplitude, sharpness and centre.
constexpr double kBumpA = 0.15;
constexpr double kZejdGamma = 400.0;
constexpr double kZedGamma = 100.0;
constexpr double kZejdCentre = 0.173;
constexpr double kZedCentre = 0.5;

void check_domain(std::span<const double> x) {
  if (x.size() != 3) {
    throw std::invalid_argument("benchmark genotype must have 3 coordinates");
  }
  for (double v : x) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw std::invalid_argument("benchmark genotype outside [0,1]^3");
    }
  }
}

void check_variant(int variant) {
  if (variant < 1 || variant > 3) {
    throw std::invalid_argument("benchmark variant must be 1, 2 or 3");
  }
}

double bump(double x, double y, double gamma, double centre) {
  const double dx = x - centre, dy = y - centre;
  return kBumpA * std::exp(-gamma * (dx * dx + dy * dy));
}

struct Raw {
  double f1, f2, g;
};

Raw zejd_raw(std::span<const double> x) {
  const double s = std::numbers::sqrt2 * (1.0 - x[2]);
  const double a = x[0] * kHalfPi, b = x[1] * kHalfPi;
  return {1.0 - s * std::cos(a), 1.0 - s * std::sin(a) * std::cos(b), 1.0 - s * std::sin(a) * std::sin(b)};
}

Raw zed_raw(std::span<const double> x) {
  const double s = 1.0 - x[2];
  const double a = x[0] * kHalfPi, b = x[1] * kHalfPi;
  return {std::cos(a) * s, std::sin(a) * std::cos(b) * s, std::sin(a) * std::sin(b) * s};
}

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

}  // namespace

ObjectiveVector eval_zejd_unclamped(int variant, std::span<const double> x) {
  check_variant(variant);
  check_domain(x);
  const Raw r = zejd_raw(x);
  double f3 = r.g;
  if (variant == 2) {
    if (r.f1 < kZejdA && r.f2 < kZejdA && r.g < kZejdA) f3 = kZejdA + kLambda * (r.g - kZejdA);
  } else if (variant == 3) {
    const double k = r.g + bump(r.f1, r.f2, kZejdGamma, kZejdCentre) - bump(0.0, 0.0, kZejdGamma, kZejdCentre);
    f3 = k > 0.0 ? k : 0.0;
  }
  return {r.f1, r.f2, f3};
}

ObjectiveVector eval_zejd(int variant, std::span<const double> x) {
  const ObjectiveVector u = eval_zejd_unclamped(variant, x);
  return {clamp01(u.c1), clamp01(u.c2), clamp01(u.c3)};
}

ObjectiveVector eval_zed(int variant, std::span<const double> x) {
  check_variant(variant);
  check_domain(x);
  const Raw r = zed_raw(x);
  double f3 = r.g;
  if (variant == 2) {
    if (r.f1 > kZedA && r.f2 > kZedA && r.g > kZedA) f3 = kZedA + kLambda * (r.g - kZedA);
  } else if (variant == 3) {
    const double k = r.g - bump(r.f1, r.f2, kZedGamma, kZedCentre) + bump(0.0, 0.0, kZedGamma, kZedCentre);
    f3 = k > 0.0 ? k : 0.0;
  }
  return {r.f1, r.f2, f3};
}

RuleModel::RuleModel(std::size_t rule_count, std::uint64_t seed) {
  if (rule_count == 0) {
    throw std::invalid_argument("rule model needs at least one rule");
  }
  Rng rng(seed);
  w_.reserve(rule_count);
  v_.reserve(rule_count);
  for (std::size_t i = 0; i < rule_count; ++i) {
    w_.push_back(rng.uniform(0.05, 0.6));
    v_.push_back(rng.uniform(0.001, 0.05));
  }
}

RuleModel::RuleModel(std::vector<double> catch_rates, std::vector<double> flag_rates)
    : w_(std::move(catch_rates)), v_(std::move(flag_rates)) {
  if (w_.empty() || w_.size() != v_.size()) {
    throw std::invalid_argument("rule model rate vectors must be nonempty and equally long");
  }
  auto open_unit = [](double r) { return r > 0.0 && r < 1.0; };
  if (!std::all_of(w_.begin(), w_.end(), open_unit) || !std::all_of(v_.begin(), v_.end(), open_unit)) {
    throw std::invalid_argument("rule rates must lie strictly inside (0,1)");
  }
}

ObjectiveVector RuleModel::evaluate(std::span<const std::uint8_t> mask) const {
  if (mask.size() != w_.size()) {
    throw std::invalid_argument("rule mask length does not match the rule count");
  }
  double miss = 1.0, pass = 1.0;
  std::size_t used = 0;
  for (std::size_t i = 0; i < mask.size(); ++i) {
    if (!mask[i]) continue;
    miss *= 1.0 - w_[i];
    pass *= 1.0 - v_[i];
    ++used;
  }
  return {1.0 - pass, miss, static_cast<double>(used) / static_cast<double>(w_.size())};
}

ObjectiveVector eval_rule_subset(const RuleModel& model, std::span<const std::uint8_t> mask) {
  return model.evaluate(mask);
}

Problem Problem::zejd(int variant) {
  check_variant(variant);
  return Problem("zejd" + std::to_string(variant), ProblemFamily::Zejd, variant, RocSpace::augmented());
}

Problem Problem::zed(int variant) {
  check_variant(variant);
  return Problem("zed" + std::to_string(variant), ProblemFamily::Zed, variant, RocSpace::three_class());
}

Problem Problem::rules(std::size_t rule_count, std::uint64_t seed) {
  Problem p("rules(" + std::to_string(rule_count) + "," + std::to_string(seed) + ")", ProblemFamily::Rules, 0,
            RocSpace::augmented());
  p.rules_ = std::make_shared<const RuleModel>(rule_count, seed);
  return p;
}

Problem Problem::from_name(std::string_view name) {
  for (int v = 1; v <= 3; ++v) {
    if (name == "zejd" + std::to_string(v)) return zejd(v);
    if (name == "zed" + std::to_string(v)) return zed(v);
  }
  unsigned long long n = 0, seed = 0;
  int consumed = 0;
  const std::string s(name);
  if (std::sscanf(s.c_str(), "rules(%llu,%llu)%n", &n, &seed, &consumed) == 2 &&
      static_cast<std::size_t>(consumed) == s.size() && n > 0) {
    return rules(static_cast<std::size_t>(n), static_cast<std::uint64_t>(seed));
  }
  throw std::invalid_argument("unknown problem '" + s + "'");
}

std::size_t Problem::dimension() const {
  return family_ == ProblemFamily::Rules ? rules_->size() : 3;
}

ObjectiveVector Problem::evaluate(const Genotype& g) const {
  switch (family_) {
    case ProblemFamily::Zejd:
      return eval_zejd(variant_, g.real);
    case ProblemFamily::Zed:
      return eval_zed(variant_, g.real);
    case ProblemFamily::Rules:
      return rules_->evaluate(g.bits);
  }
  return {};
}

bool Problem::has_dent() const {
  return family_ != ProblemFamily::Rules && variant_ != 1;
}

bool Problem::in_dent(std::span<const double> x, double margin) const {
  if (!has_dent()) return false;
  check_domain(x);
  if (family_ == ProblemFamily::Zejd) {
    const Raw r = zejd_raw(x);
    if (variant_ == 2) {
      const double t = kZejdA - margin;
      return r.f1 < t && r.f2 < t && r.g < t;
    }
    return bump(r.f1, r.f2, kZejdGamma, kZejdCentre) - bump(0.0, 0.0, kZejdGamma, kZejdCentre) > margin;
  }
  const Raw r = zed_raw(x);
  if (variant_ == 2) {
    const double t = kZedA + margin;
    return r.f1 > t && r.f2 > t && r.g > t;
  }
  return bump(r.f1, r.f2, kZedGamma, kZedCentre) - bump(0.0, 0.0, kZedGamma, kZedCentre) > margin;
}

FrontDomain front_domain(const Problem& problem) {
  switch (problem.family()) {
    case ProblemFamily::Zejd:
      // x1 < 0.5 gives f1 < 0, which clamps onto points dominated by the
      // x1 = 0.5 edge.
      return {0.5, 1.0, 0.0, 1.0};
    case ProblemFamily::Zed:
      return {0.0, 1.0, 0.0, 1.0};
    case ProblemFamily::Rules:
      break;
  }
  throw std::invalid_argument("true front is only defined for the benchmark problems");
}

std::vector<ObjectiveVector> sample_true_front(const Problem& problem, std::size_t count, std::uint64_t seed) {
  const FrontDomain dom = front_domain(problem);
  std::vector<ObjectiveVector> out;
  out.reserve(count);
  std::size_t k = static_cast<std::size_t>(std::sqrt(static_cast<double>(count)));
  while (k * k > count) --k;
  while ((k + 1) * (k + 1) <= count) ++k;
  Genotype g;
  auto emit = [&](double x1, double x2) {
    g.real = {x1, x2, 0.0};
    out.push_back(problem.evaluate(g));
  };
  for (std::size_t i = 0; i < k; ++i) {
    const double t = k > 1 ? static_cast<double>(i) / static_cast<double>(k - 1) : 0.0;
    for (std::size_t j = 0; j < k; ++j) {
      const double u = k > 1 ? static_cast<double>(j) / static_cast<double>(k - 1) : 0.0;
      emit(dom.x1_lo + (dom.x1_hi - dom.x1_lo) * t, dom.x2_lo + (dom.x2_hi - dom.x2_lo) * u);
    }
  }
  Rng rng(seed);
  while (out.size() < count) {
    const double x1 = rng.uniform(dom.x1_lo, dom.x1_hi);
    const double x2 = rng.uniform(dom.x2_lo, dom.x2_hi);
    emit(x1, x2);
  }
  return out;
}

}  // namespace chemoa
