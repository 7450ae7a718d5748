#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "chemoa/ranking.hpp"
#include "oracles.hpp"

using namespace chemoa;

namespace {

const RocSpace kAug = RocSpace::augmented();
const RocSpace kTri = RocSpace::three_class();

using Levels = std::vector<std::vector<std::size_t>>;

std::vector<Vec3> random_points(std::size_t n, Rng& rng) {
  std::vector<Vec3> pts;
  for (std::size_t i = 0; i < n; ++i) pts.push_back({rng.uniform01(), rng.uniform01(), rng.uniform01()});
  return pts;
}

// Is p optimal among points plus references for some nonnegative weights?
// Weights w = (a, b, 1 - a - b); every feasible region of the resulting
// 2-D linear program has a vertex where two constraint lines cross, so
// checking all crossings decides feasibility.
bool optimal_for_some_weights(const Vec3& p, const std::vector<Vec3>& pts, const RocSpace& space) {
  const double s = space.sense() == Sense::Maximize ? 1.0 : -1.0;
  struct Line {
    double a, b, c;  // a*w1 + b*w2 + c >= 0
  };
  std::vector<Line> lines{{1, 0, 0}, {0, 1, 0}, {-1, -1, 1}};
  std::vector<Vec3> all = pts;
  for (const auto& r : space.references()) all.push_back(r);
  for (const auto& u : all) {
    const Vec3 d = (p - u) * s;
    if (norm(d) == 0.0) continue;
    lines.push_back({d.c1 - d.c3, d.c2 - d.c3, d.c3});
  }
  for (std::size_t i = 0; i < lines.size(); ++i) {
    for (std::size_t j = i + 1; j < lines.size(); ++j) {
      const auto& l = lines[i];
      const auto& m = lines[j];
      const double det = l.a * m.b - l.b * m.a;
      if (std::fabs(det) < 1e-14) continue;
      const double w1 = (-l.c * m.b + l.b * m.c) / det;
      const double w2 = (-l.a * m.c + l.c * m.a) / det;
      bool ok = true;
      for (const auto& k : lines) ok = ok && k.a * w1 + k.b * w2 + k.c >= -1e-12;
      if (ok) return true;
    }
  }
  return false;
}

// O(n^2) dominance matrix peeling.
Levels brute_force_fronts(const std::vector<Vec3>& pts, Sense sense) {
  auto better = [&](const Vec3& a, const Vec3& b) {
    bool strict = false;
    for (std::size_t k = 0; k < 3; ++k) {
      const double x = sense == Sense::Minimize ? a[k] : -a[k];
      const double y = sense == Sense::Minimize ? b[k] : -b[k];
      if (x > y) return false;
      if (x < y) strict = true;
    }
    return strict;
  };
  Levels out;
  std::vector<char> done(pts.size(), 0);
  std::size_t left = pts.size();
  while (left > 0) {
    std::vector<std::size_t> front;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (done[i]) continue;
      bool dominated = false;
      for (std::size_t j = 0; j < pts.size(); ++j) {
        if (!done[j] && better(pts[j], pts[i])) dominated = true;
      }
      if (!dominated) front.push_back(i);
    }
    for (std::size_t i : front) done[i] = 1;
    left -= front.size();
    out.push_back(front);
  }
  return out;
}

}  // namespace

TEST_CASE("hull sort: dominated point drops to the second level") {
  const std::vector<Vec3> pts{{0.9, 0.9, 0.9}, {0.1, 0.1, 0.1}};
  const auto r = ch_sort(pts, kTri);
  CHECK(r.levels == Levels{{0}, {1}});
  CHECK(r.redundant.empty());
}

TEST_CASE("hull sort differs from Pareto sort") {
  const std::vector<Vec3> pts{{0.5, 0.5, 0.5}, {0.4, 0.4, 0.4}};
  // Barycentric weights of (0.4,0.4,0.4) over {(0.5,0.5,0.5), e1, e2, e3}.
  const double alpha = 0.4, rest = 0.2;
  const Vec3 combo = pts[0] * alpha + Vec3{1, 0, 0} * rest + Vec3{0, 1, 0} * rest + Vec3{0, 0, 1} * rest;
  CHECK(distance(combo, pts[1]) < 1e-15);
  CHECK(alpha + 3 * rest == doctest::Approx(1.0));
  CHECK(ch_sort(pts, kTri).levels == Levels{{0}, {1}});
  // Pareto sort with the same points keeps both dominance-ordered.
  CHECK(nondominated_sort(pts, Sense::Maximize) == Levels{{0}, {1}});
  const std::vector<Vec3> incomparable{{0.5, 0.5, 0.5}, {0.45, 0.45, 0.7}, {0.55, 0.6, 0.2}};
  CHECK(nondominated_sort(incomparable, Sense::Maximize).size() == 1);
}

TEST_CASE("duplicates land in the redundant level") {
  Rng rng(3);
  auto pts = random_points(10, rng);
  pts.push_back(pts[4]);
  pts.push_back(pts[2] + Vec3{1e-12, 0, 0});
  const auto r = ch_sort(pts, kAug);
  CHECK(r.redundant == std::vector<std::size_t>{10, 11});
  const auto lvl = r.level_of(pts.size());
  CHECK(lvl[10] == r.level_count());
  CHECK(lvl[11] == r.level_count());
  CHECK(lvl[4] < r.level_count());
}

TEST_CASE("guess-plane population forms a single level") {
  std::vector<Vec3> pts;
  for (int i = 0; i <= 6; ++i) pts.push_back({i / 6.0, 1.0 - i / 6.0, 0.5});
  const auto r = ch_sort(pts, kAug);
  REQUIRE(r.levels.size() == 1);
  CHECK(r.levels[0].size() == pts.size());
}

TEST_CASE("hull levels partition the population; level 1 holds the weight-optimal vertices") {
  Rng rng(9);
  for (int trial = 0; trial < 60; ++trial) {
    const RocSpace& space = trial % 2 ? kAug : kTri;
    auto pts = random_points(3 + rng.below(25), rng);
    if (trial % 5 == 0) pts.push_back(pts[0]);
    const auto r = ch_sort(pts, space);
    std::multiset<std::size_t> seen;
    for (const auto& l : r.levels) {
      CHECK_FALSE(l.empty());
      seen.insert(l.begin(), l.end());
    }
    seen.insert(r.redundant.begin(), r.redundant.end());
    std::multiset<std::size_t> all;
    for (std::size_t i = 0; i < pts.size(); ++i) all.insert(i);
    CHECK(seen == all);

    std::vector<Vec3> with_refs = pts;
    for (const auto& q : space.references()) with_refs.push_back(q);
    const auto extreme = oracle::extreme_points(with_refs);
    std::vector<std::size_t> expected;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (extreme.count(i) && optimal_for_some_weights(pts[i], pts, space)) expected.push_back(i);
    }
    if (r.redundant.empty()) {
      if (expected.empty()) {
        CHECK(r.levels.size() == 1);
      } else {
        CHECK(r.levels.front() == expected);
      }
    }
    for (const auto& l : r.levels) {
      for (std::size_t a = 0; a < l.size(); ++a) {
        for (std::size_t b = a + 1; b < l.size(); ++b) CHECK(distance(pts[l[a]], pts[l[b]]) >= kRedundancyDistance);
      }
    }
  }
}

TEST_CASE("non-dominated sort") {
  const std::vector<Vec3> pair{{0, 0, 0}, {1, 1, 1}};
  CHECK(nondominated_sort(pair, Sense::Minimize) == Levels{{0}, {1}});
  CHECK(nondominated_sort(pair, Sense::Maximize) == Levels{{1}, {0}});
  const std::vector<Vec3> flat{{0.2, 0.8, 0.5}, {0.8, 0.2, 0.5}, {0.5, 0.5, 0.4}};
  CHECK(nondominated_sort(flat, Sense::Minimize).size() == 1);
  CHECK_FALSE(dominates(pair[0], pair[0], Sense::Minimize));

  Rng rng(20);
  for (int trial = 0; trial < 30; ++trial) {
    auto pts = random_points(20, rng);
    // Coarse coordinates create ties and dominance chains.
    for (auto& p : pts) p = {std::round(p.c1 * 4) / 4, std::round(p.c2 * 4) / 4, std::round(p.c3 * 4) / 4};
    for (Sense s : {Sense::Minimize, Sense::Maximize}) CHECK(nondominated_sort(pts, s) == brute_force_fronts(pts, s));
  }
}

TEST_CASE("crowding distance") {
  const std::vector<Vec3> pts{{0, 1, 0.5}, {0.25, 0.75, 0.5}, {0.5, 0.5, 0.5}, {1, 0, 0.5}};
  const std::vector<std::size_t> front{0, 1, 2, 3};
  const auto cd = crowding_distance(pts, front);
  CHECK(std::isinf(cd[0]));
  CHECK(std::isinf(cd[3]));
  // Interior: normalized neighbour gaps on the two varying axes.
  CHECK(cd[1] == doctest::Approx(0.5 + 0.5));
  CHECK(cd[2] == doctest::Approx(0.75 + 0.75));
  const std::vector<std::size_t> two{0, 3};
  for (double d : crowding_distance(pts, two)) CHECK(std::isinf(d));
}
