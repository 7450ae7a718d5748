#include "chemoa/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace chemoa {

double gini_of_distances(std::vector<double> d) {
  const std::size_t n = d.size();
  if (n < 2) return 0.0;
  std::sort(d.begin(), d.end());
  double total = 0.0;
  for (double v : d) total += v;
  if (!(total > 0.0)) return 0.0;
  // sum (2i - n - 1) d_i folded from both ends, so equal distances cancel
  // exactly.
  double weighted = 0.0;
  for (std::size_t i = 1; i <= n / 2; ++i) {
    const double w = static_cast<double>(n + 1 - 2 * i);
    weighted += w * (d[n - i] - d[i - 1]);
  }
  return weighted / (static_cast<double>(n) * total);
}

std::vector<double> nearest_neighbor_distances(std::span<const ObjectiveVector> points) {
  const std::size_t n = points.size();
  std::vector<double> out(n, std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = distance(points[i], points[j]);
      out[i] = std::min(out[i], d);
      out[j] = std::min(out[j], d);
    }
  }
  if (n < 2) std::fill(out.begin(), out.end(), 0.0);
  return out;
}

double gini(std::span<const ObjectiveVector> points) {
  if (points.size() < 2) return 0.0;
  return gini_of_distances(nearest_neighbor_distances(points));
}

namespace {

// Union area of 2-D boxes [(x, y), (rx, ry)], kept as a staircase sorted by
// x ascending (y strictly descending).
class Staircase {
 public:
  Staircase(double rx, double ry) : rx_(rx), ry_(ry) {}

  double area() const { return area_; }

  void insert(double x, double y) {
    // The point with the largest x' <= x has the lowest y among them.
    auto pos = std::upper_bound(steps_.begin(), steps_.end(), x, [](double v, const Step& s) { return v < s.x; });
    if (pos != steps_.begin() && std::prev(pos)->y <= y) return;
    auto first = std::lower_bound(steps_.begin(), steps_.end(), x, [](const Step& s, double v) { return s.x < v; });
    double cur_x = x;
    double cur_h = first == steps_.begin() ? ry_ : std::prev(first)->y;
    auto last = first;
    while (last != steps_.end() && last->y >= y) {
      area_ += (last->x - cur_x) * (cur_h - y);
      cur_x = last->x;
      cur_h = last->y;
      ++last;
    }
    const double bound = last == steps_.end() ? rx_ : last->x;
    area_ += (bound - cur_x) * (cur_h - y);
    first = steps_.erase(first, last);
    steps_.insert(first, Step{x, y});
  }

 private:
  struct Step {
    double x, y;
  };
  double rx_, ry_;
  double area_ = 0.0;
  std::vector<Step> steps_;
};

double sweep(std::vector<ObjectiveVector>& pts, const ObjectiveVector& ref) {
  std::sort(pts.begin(), pts.end(), [](const ObjectiveVector& a, const ObjectiveVector& b) { return a.c3 < b.c3; });
  Staircase stairs(ref.c1, ref.c2);
  double volume = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    stairs.insert(pts[i].c1, pts[i].c2);
    const double next = i + 1 < pts.size() ? pts[i + 1].c3 : ref.c3;
    volume += stairs.area() * (next - pts[i].c3);
  }
  return volume;
}

bool inside(const ObjectiveVector& p, const ObjectiveVector& ref) {
  return p.c1 < ref.c1 && p.c2 < ref.c2 && p.c3 < ref.c3;
}

}  // namespace

double hypervolume3(std::span<const ObjectiveVector> points, const ObjectiveVector& reference) {
  std::vector<ObjectiveVector> pts;
  pts.reserve(points.size());
  for (const auto& p : points) {
    if (inside(p, reference)) pts.push_back(p);
  }
  return sweep(pts, reference);
}

std::vector<double> hypervolume_contributions(std::span<const ObjectiveVector> points,
                                              const ObjectiveVector& reference) {
  const double total = hypervolume3(points, reference);
  std::vector<double> out(points.size(), 0.0);
  std::vector<ObjectiveVector> rest;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!inside(points[i], reference)) continue;
    rest.clear();
    for (std::size_t j = 0; j < points.size(); ++j) {
      if (j != i && inside(points[j], reference)) rest.push_back(points[j]);
    }
    out[i] = std::max(0.0, total - sweep(rest, reference));
  }
  return out;
}

Summary summarize(std::span<const double> values) {
  Summary s;
  if (values.empty()) return s;
  const double n = static_cast<double>(values.size());
  for (double v : values) s.mean += v;
  s.mean /= n;
  double sq = 0.0;
  for (double v : values) sq += (v - s.mean) * (v - s.mean);
  s.stddev = std::sqrt(sq / n);
  return s;
}

}  // namespace chemoa
