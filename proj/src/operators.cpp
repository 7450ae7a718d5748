#include "chemoa/operators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace chemoa {

void OperatorParams::validate() const {
  auto probability = [](double p) { return p >= 0.0 && p <= 1.0; };
  if (!probability(crossover_probability)) {
    throw std::invalid_argument("crossover probability must lie in [0,1]");
  }
  if (mutation_probability && !probability(*mutation_probability)) {
    throw std::invalid_argument("mutation probability must lie in [0,1]");
  }
  if (!(crossover_index > 0.0) || !(mutation_index > 0.0)) {
    throw std::invalid_argument("distribution indices must be positive");
  }
}

namespace {

constexpr double kSameValue = 1e-14;

double spread_factor(double u, double beta, double eta) {
  const double alpha = 2.0 - std::pow(beta, -(eta + 1.0));
  if (u <= 1.0 / alpha) {
    return std::pow(u * alpha, 1.0 / (eta + 1.0));
  }
  return std::pow(1.0 / (2.0 - u * alpha), 1.0 / (eta + 1.0));
}

}  // namespace

RealPair sbx_crossover(std::span<const double> p1, std::span<const double> p2, const OperatorParams& params, Rng& rng,
                       double lower, double upper) {
  std::vector<double> c1(p1.begin(), p1.end());
  std::vector<double> c2(p2.begin(), p2.end());
  if (p1.size() != p2.size()) {
    throw std::invalid_argument("crossover parents differ in length");
  }
  if (!rng.bernoulli(params.crossover_probability)) {
    return {std::move(c1), std::move(c2)};
  }
  const double eta = params.crossover_index;
  for (std::size_t i = 0; i < p1.size(); ++i) {
    if (rng.uniform01() > 0.5) continue;
    if (std::abs(p1[i] - p2[i]) <= kSameValue) continue;
    const double y1 = std::min(p1[i], p2[i]);
    const double y2 = std::max(p1[i], p2[i]);
    const double u = rng.uniform01();
    const double bq1 = spread_factor(u, 1.0 + 2.0 * (y1 - lower) / (y2 - y1), eta);
    const double bq2 = spread_factor(u, 1.0 + 2.0 * (upper - y2) / (y2 - y1), eta);
    const double a = std::clamp(0.5 * ((y1 + y2) - bq1 * (y2 - y1)), lower, upper);
    const double b = std::clamp(0.5 * ((y1 + y2) + bq2 * (y2 - y1)), lower, upper);
    if (rng.uniform01() <= 0.5) {
      c1[i] = b;
      c2[i] = a;
    } else {
      c1[i] = a;
      c2[i] = b;
    }
  }
  return {std::move(c1), std::move(c2)};
}

std::vector<double> polynomial_mutation(std::span<const double> x, const OperatorParams& params, Rng& rng,
                                        double lower, double upper) {
  std::vector<double> y(x.begin(), x.end());
  const double pm = params.mutation_probability_for(x.size());
  const double eta = params.mutation_index;
  const double power = 1.0 / (eta + 1.0);
  for (double& v : y) {
    if (!rng.bernoulli(pm)) continue;
    if (upper == lower) {
      v = lower;
      continue;
    }
    const double span = upper - lower;
    const double d1 = (v - lower) / span;
    const double d2 = (upper - v) / span;
    const double u = rng.uniform01();
    double dq;
    if (u <= 0.5) {
      const double val = 2.0 * u + (1.0 - 2.0 * u) * std::pow(1.0 - d1, eta + 1.0);
      dq = std::pow(val, power) - 1.0;
    } else {
      const double val = 2.0 * (1.0 - u) + 2.0 * (u - 0.5) * std::pow(1.0 - d2, eta + 1.0);
      dq = 1.0 - std::pow(val, power);
    }
    v = std::clamp(v + dq * span, lower, upper);
  }
  return y;
}

MaskPair single_point_crossover(std::span<const std::uint8_t> m1, std::span<const std::uint8_t> m2, std::size_t k) {
  if (m1.size() != m2.size()) {
    throw std::invalid_argument("crossover masks differ in length");
  }
  k = std::min(k, m1.size());
  std::vector<std::uint8_t> c1(m1.begin(), m1.begin() + static_cast<std::ptrdiff_t>(k));
  std::vector<std::uint8_t> c2(m2.begin(), m2.begin() + static_cast<std::ptrdiff_t>(k));
  c1.insert(c1.end(), m2.begin() + static_cast<std::ptrdiff_t>(k), m2.end());
  c2.insert(c2.end(), m1.begin() + static_cast<std::ptrdiff_t>(k), m1.end());
  return {std::move(c1), std::move(c2)};
}

MaskPair bit_variation(std::span<const std::uint8_t> m1, std::span<const std::uint8_t> m2, const OperatorParams& params,
                       Rng& rng) {
  if (m1.size() != m2.size()) {
    throw std::invalid_argument("crossover masks differ in length");
  }
  const std::size_t n = m1.size();
  MaskPair children{std::vector<std::uint8_t>(m1.begin(), m1.end()), std::vector<std::uint8_t>(m2.begin(), m2.end())};
  if (n >= 2 && rng.bernoulli(params.crossover_probability)) {
    children = single_point_crossover(m1, m2, 1 + rng.below(n - 1));
  }
  const double pm = params.mutation_probability_for(n);
  for (auto* child : {&children.first, &children.second}) {
    for (auto& bit : *child) {
      if (rng.bernoulli(pm)) bit ^= 1u;
    }
  }
  return children;
}

}  // namespace chemoa
