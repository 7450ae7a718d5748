#include "chemoa/ranking.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace chemoa {

std::vector<std::size_t> LevelAssignment::level_of(std::size_t n) const {
  std::vector<std::size_t> out(n, 0);
  for (std::size_t l = 0; l < levels.size(); ++l) {
    for (std::size_t i : levels[l]) out[i] = l + 1;
  }
  for (std::size_t i : redundant) out[i] = levels.size() + 1;
  return out;
}

LevelAssignment ch_sort(std::span<const ObjectiveVector> points, const RocSpace& space) {
  LevelAssignment out;
  std::vector<std::size_t> kept;
  std::vector<ObjectiveVector> kept_points;
  for (std::size_t i = 0; i < points.size(); ++i) {
    bool redundant = false;
    for (std::size_t k : kept) {
      if (distance(points[i], points[k]) < kRedundancyDistance) {
        redundant = true;
        break;
      }
    }
    if (redundant) {
      out.redundant.push_back(i);
    } else {
      kept.push_back(i);
      kept_points.push_back(points[i]);
    }
  }
  if (kept.empty()) return out;
  for (auto& level : hull_levels(kept_points, space)) {
    for (std::size_t& idx : level) idx = kept[idx];
    std::sort(level.begin(), level.end());
    out.levels.push_back(std::move(level));
  }
  return out;
}

bool dominates(const ObjectiveVector& a, const ObjectiveVector& b, Sense sense) {
  if (a == b) return false;
  if (sense == Sense::Minimize) {
    return a.c1 <= b.c1 && a.c2 <= b.c2 && a.c3 <= b.c3;
  }
  return a.c1 >= b.c1 && a.c2 >= b.c2 && a.c3 >= b.c3;
}

std::vector<std::vector<std::size_t>> nondominated_sort(std::span<const ObjectiveVector> points, Sense sense) {
  const std::size_t n = points.size();
  std::vector<std::vector<std::size_t>> dominated(n);
  std::vector<std::size_t> count(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (dominates(points[i], points[j], sense)) {
        dominated[i].push_back(j);
        ++count[j];
      } else if (dominates(points[j], points[i], sense)) {
        dominated[j].push_back(i);
        ++count[i];
      }
    }
  }
  std::vector<std::vector<std::size_t>> fronts;
  std::vector<std::size_t> current;
  for (std::size_t i = 0; i < n; ++i) {
    if (count[i] == 0) current.push_back(i);
  }
  while (!current.empty()) {
    std::vector<std::size_t> next;
    for (std::size_t i : current) {
      for (std::size_t j : dominated[i]) {
        if (--count[j] == 0) next.push_back(j);
      }
    }
    std::sort(next.begin(), next.end());
    fronts.push_back(std::move(current));
    current = std::move(next);
  }
  return fronts;
}

std::vector<double> crowding_distance(std::span<const ObjectiveVector> points, std::span<const std::size_t> front) {
  const std::size_t m = front.size();
  std::vector<double> out(m, 0.0);
  if (m <= 2) {
    std::fill(out.begin(), out.end(), std::numeric_limits<double>::infinity());
    return out;
  }
  std::vector<std::size_t> order(m);
  for (std::size_t axis = 0; axis < 3; ++axis) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return points[front[a]][axis] < points[front[b]][axis]; });
    const double lo = points[front[order.front()]][axis];
    const double hi = points[front[order.back()]][axis];
    out[order.front()] = std::numeric_limits<double>::infinity();
    out[order.back()] = std::numeric_limits<double>::infinity();
    if (!(hi > lo)) continue;
    for (std::size_t k = 1; k + 1 < m; ++k) {
      out[order[k]] += (points[front[order[k + 1]]][axis] - points[front[order[k - 1]]][axis]) / (hi - lo);
    }
  }
  return out;
}

}  // namespace chemoa
