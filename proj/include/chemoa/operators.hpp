#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "chemoa/random.hpp"

namespace chemoa {

struct OperatorParams {
  double crossover_probability = 0.9;
  /// Per-coordinate (or per-bit) mutation probability; 1/n when unset.
  std::optional<double> mutation_probability;
  double crossover_index = 20.0;
  double mutation_index = 20.0;

  double mutation_probability_for(std::size_t n) const {
    return mutation_probability ? *mutation_probability : 1.0 / static_cast<double>(n);
  }

  /// Throws std::invalid_argument unless probabilities lie in [0,1] and the
  /// distribution indices are positive.
  void validate() const;
};

using RealPair = std::pair<std::vector<double>, std::vector<double>>;
using MaskPair = std::pair<std::vector<std::uint8_t>, std::vector<std::uint8_t>>;

/// Simulated binary crossover on coordinates bounded by [lower, upper].
RealPair sbx_crossover(std::span<const double> p1, std::span<const double> p2, const OperatorParams& params, Rng& rng,
                       double lower = 0.0, double upper = 1.0);

/// Polynomial mutation on coordinates bounded by [lower, upper].
std::vector<double> polynomial_mutation(std::span<const double> x, const OperatorParams& params, Rng& rng,
                                        double lower = 0.0, double upper = 1.0);

/// child1 = m1[0..k) ++ m2[k..n), child2 = m2[0..k) ++ m1[k..n).
MaskPair single_point_crossover(std::span<const std::uint8_t> m1, std::span<const std::uint8_t> m2, std::size_t k);

/// Single-point crossover with the crossover probability (cut point uniform
/// in [1, n-1]), then independent bit flips with the mutation probability.
MaskPair bit_variation(std::span<const std::uint8_t> m1, std::span<const std::uint8_t> m2, const OperatorParams& params,
                       Rng& rng);

}  // namespace chemoa
