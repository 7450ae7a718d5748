#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "chemoa/geometry.hpp"
#include "chemoa/rocch.hpp"

namespace chemoa {

/// Objective vectors closer than this (Euclidean) count as redundant.
inline constexpr double kRedundancyDistance = 1e-9;

struct LevelAssignment {
  std::vector<std::vector<std::size_t>> levels;
  /// Points within kRedundancyDistance of an earlier kept point. Ranked
  /// after every hull level.
  std::vector<std::size_t> redundant;

  std::size_t level_count() const { return levels.size() + (redundant.empty() ? 0 : 1); }
  /// 1-based level of every point; redundant points get level_count().
  std::vector<std::size_t> level_of(std::size_t n) const;
};

/// Splits off redundant points (first occurrence kept), then peels the rest
/// into convex-hull levels with hull_levels().
LevelAssignment ch_sort(std::span<const ObjectiveVector> points, const RocSpace& space);

/// a dominates b: no worse in every coordinate and not equal.
bool dominates(const ObjectiveVector& a, const ObjectiveVector& b, Sense sense);

/// Pareto fronts, best first, each in ascending index order.
std::vector<std::vector<std::size_t>> nondominated_sort(std::span<const ObjectiveVector> points, Sense sense);

/// Crowding distance of each member of one front (indices into points).
/// Boundary members of every objective get +infinity.
std::vector<double> crowding_distance(std::span<const ObjectiveVector> points, std::span<const std::size_t> front);

}  // namespace chemoa
