#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "chemoa/point.hpp"

namespace chemoa {

struct MetricRecord {
  double vus = 0.0;
  double gini = 0.0;
  double hypervolume = 0.0;
  std::int64_t wall_time_ms = 0;
  std::int64_t evaluations = 0;
};

/// Gini coefficient of a set of distances, sorted ascending internally:
/// G = (1/n)(n + 1 - 2 sum (n+1-i) d_i / sum d_i). Returns 0 for fewer than
/// two distances or an all-zero set.
double gini_of_distances(std::vector<double> distances);

/// Euclidean nearest-neighbour distance of every point.
std::vector<double> nearest_neighbor_distances(std::span<const ObjectiveVector> points);

/// Spacing uniformity of a point set; 0 means evenly spread.
double gini(std::span<const ObjectiveVector> points);

/// Exact volume of the union of boxes [p, reference] over minimization
/// points p. Points not strictly better than the reference in every
/// coordinate are ignored.
double hypervolume3(std::span<const ObjectiveVector> points, const ObjectiveVector& reference);

/// hypervolume3(points) - hypervolume3(points without i), for every i.
std::vector<double> hypervolume_contributions(std::span<const ObjectiveVector> points,
                                              const ObjectiveVector& reference);

struct Summary {
  double mean = 0.0;
  double stddev = 0.0;  // population standard deviation
};

/// Mean and population standard deviation (two-pass). Empty input gives zeros.
Summary summarize(std::span<const double> values);

}  // namespace chemoa
