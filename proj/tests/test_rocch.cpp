#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <stdexcept>

#include "chemoa/problems.hpp"
#include "chemoa/rocch.hpp"
#include "oracles.hpp"

using namespace chemoa;

namespace {

const RocSpace kAug = RocSpace::augmented();
const RocSpace kTri = RocSpace::three_class();

std::vector<Vec3> random_points(std::size_t n, Rng& rng) {
  std::vector<Vec3> pts;
  for (std::size_t i = 0; i < n; ++i) pts.push_back({rng.uniform01(), rng.uniform01(), rng.uniform01()});
  return pts;
}

std::vector<Vec3> without(std::vector<Vec3> pts, std::size_t i) {
  pts.erase(pts.begin() + static_cast<std::ptrdiff_t>(i));
  return pts;
}

// Feasible volume inside the hull of all pushes of points and references,
// from supporting planes found by triple enumeration.
oracle::Estimate vus_monte_carlo(const std::vector<Vec3>& points, const RocSpace& space, std::uint64_t seed) {
  std::vector<Vec3> all = points;
  for (const auto& r : space.references()) all.push_back(r);
  const double bound = space.sense() == Sense::Minimize ? 1.0 : 0.0;
  auto cloud = oracle::pushes(all, bound);
  std::sort(cloud.begin(), cloud.end());
  cloud.erase(std::unique(cloud.begin(), cloud.end()), cloud.end());
  const auto planes = oracle::supporting_planes(cloud);
  return oracle::monte_carlo({0, 0, 0}, {1, 1, 1}, 400'000, seed, [&](const Vec3& y) {
    return space.feasible_side().contains(y) && oracle::inside(planes, y);
  });
}

}  // namespace

TEST_CASE("extreme values") {
  CHECK(vus(std::vector<Vec3>{{0, 0, 0}}, kAug) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(std::fabs(vus(std::vector<Vec3>{{0, 0, 0}}, kAug) - 0.5) < 1e-12);
  CHECK(std::fabs(vus(std::vector<Vec3>{{1, 1, 1}}, kTri) - 5.0 / 6.0) < 1e-12);
  CHECK(vus(std::vector<Vec3>{{0.4, 0.4, 0.2}}, kTri) == 0.0);
  CHECK(vus(std::vector<Vec3>{}, kAug) == 0.0);
  CHECK(vus(std::vector<Vec3>{}, kTri) == 0.0);
  CHECK(kAug.max_vus() == 0.5);
  CHECK(kTri.max_vus() == 5.0 / 6.0);
}

TEST_CASE("references lie on the guess plane") {
  for (const RocSpace* s : {&kAug, &kTri}) {
    for (const auto& r : s->references()) CHECK(s->feasible_side().signed_distance(r) == doctest::Approx(0.0));
  }
}

TEST_CASE("guess-plane subsets have zero VUS") {
  Rng rng(2);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Vec3> aug, tri;
    const std::size_t n = 1 + rng.below(12);
    for (std::size_t i = 0; i < n; ++i) {
      const double x = rng.uniform01();
      aug.push_back({x, 1.0 - x, rng.uniform01()});
      const double a = rng.uniform01(), b = rng.uniform01() * (1.0 - a);
      tri.push_back({a, b, 1.0 - a - b});
    }
    CHECK(std::fabs(vus(aug, kAug)) < 1e-12);
    CHECK(std::fabs(vus(tri, kTri)) < 1e-12);
  }
}

TEST_CASE("VUS matches a Monte-Carlo volume of the closure hull") {
  Rng rng(8);
  for (int trial = 0; trial < 6; ++trial) {
    const RocSpace& space = trial % 2 ? kAug : kTri;
    const auto pts = random_points(1 + rng.below(4), rng);
    const double v = vus(pts, space);
    const auto mc = vus_monte_carlo(pts, space, 50 + trial);
    CHECK(std::fabs(v - mc.value) < 3 * mc.stderr_ + 1e-12);
  }
}

TEST_CASE("bounds, monotonicity and order independence") {
  Rng rng(4);
  for (int trial = 0; trial < 40; ++trial) {
    const RocSpace& space = trial % 2 ? kAug : kTri;
    auto pts = random_points(1 + rng.below(30), rng);
    const double v = vus(pts, space);
    CHECK(v >= 0.0);
    CHECK(v <= space.max_vus() + 1e-12);
    auto grown = pts;
    grown.push_back({rng.uniform01(), rng.uniform01(), rng.uniform01()});
    CHECK(vus(grown, space) >= v);
    std::reverse(pts.begin(), pts.end());
    CHECK(vus(pts, space) == v);
    auto with_ref = pts;
    with_ref.push_back(space.references()[rng.below(space.references().size())]);
    CHECK(vus(with_ref, space) == v);
    auto with_dup = pts;
    with_dup.push_back(pts[0]);
    CHECK(vus(with_dup, space) == v);
  }
}

TEST_CASE("delta VUS: dominated point contributes nothing") {
  const std::vector<Vec3> pts{{1, 1, 1}, {0.9, 0.9, 0.9}};
  const auto d = delta_vus(pts, kTri);
  CHECK(d[1] == 0.0);
  CHECK(d[0] > 0.0);
}

TEST_CASE("delta VUS: symmetric points contribute equally") {
  const std::vector<Vec3> pts{{0.8, 0.6, 0.6}, {0.6, 0.8, 0.6}};
  const auto d = delta_vus(pts, kTri);
  CHECK(d[0] == doctest::Approx(d[1]).epsilon(1e-12));
  CHECK(d[0] > 0.0);
}

TEST_CASE("delta VUS of 8 random feasible points, seed 11, matches recomputation") {
  Rng rng(11);
  std::vector<Vec3> pts;
  while (pts.size() < 8) {
    const Vec3 p{rng.uniform01(), rng.uniform01(), rng.uniform01()};
    if (kTri.feasible_side().contains(p)) pts.push_back(p);
  }
  const auto d = delta_vus(pts, kTri);
  const double total = vus(pts, kTri);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    CHECK(d[i] == doctest::Approx(total - vus(without(pts, i), kTri)).epsilon(1e-12));
    CHECK(d[i] >= 0.0);
  }
}

TEST_CASE("VusState: neutral removals and local contributions agree with recomputation") {
  Rng rng(12);
  for (int trial = 0; trial < 60; ++trial) {
    const RocSpace& space = trial % 2 ? kAug : kTri;
    std::vector<Vec3> pts;
    switch (trial % 3) {
      case 0:
        pts = random_points(3 + rng.below(40), rng);
        break;
      case 1: {
        const Problem p = trial % 2 ? Problem::zejd(1 + rng.below(3)) : Problem::zed(1 + rng.below(3));
        pts = sample_true_front(p, 10 + rng.below(60), trial);
        pts.push_back(pts[rng.below(pts.size())]);
        break;
      }
      default:
        for (std::size_t i = 0; i < 30; ++i) pts.push_back({rng.below(5) / 4.0, rng.below(5) / 4.0, rng.below(5) / 4.0});
    }
    const VusState state(pts, space);
    REQUIRE(state.value() == vus(pts, space));
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const double rest = vus(without(pts, i), space);
      if (state.removal_is_neutral(i)) {
        CHECK(rest == state.value());
        CHECK(state.contribution(i) == 0.0);
      } else {
        CHECK(state.value_without(i) == rest);
        CHECK(std::fabs(state.contribution(i) - std::max(0.0, state.value() - rest)) < 1e-10);
      }
    }
  }
}

TEST_CASE("VUS of nested ZED1 front samples converges") {
  const Problem zed1 = Problem::zed(1);
  const double dense = vus(sample_true_front(zed1, 10000, 1), kTri);
  const double coarse = vus(sample_true_front(zed1, 1000, 1), kTri);
  CHECK(std::fabs(dense - coarse) < 1e-3);
  CHECK(dense < 5.0 / 6.0);
}

TEST_CASE("operating point selection") {
  const std::vector<Vec3> pts{{0.6, 0.6, 0.6}};
  OperatingPointQuery q;
  auto best = select_operating_point(pts, kTri, q);
  CHECK(best.point == Vec3{0.6, 0.6, 0.6});
  CHECK(best.score == doctest::Approx(0.6).epsilon(1e-12));

  q.priors = {1, 0, 0};
  best = select_operating_point(pts, kTri, q);
  CHECK(best.point == Vec3{1, 0, 0});
  CHECK(best.score == doctest::Approx(1.0));

  q.priors = {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
  q.mode = OperatingMode::Cost;
  q.instances = 300;
  best = select_operating_point(pts, kTri, q);
  CHECK(best.point == Vec3{0.6, 0.6, 0.6});
  CHECK(best.score == doctest::Approx(120.0).epsilon(1e-12));
}

TEST_CASE("operating point score is the brute-force optimum over all candidates") {
  // A linear score with nonnegative weights peaks at a hull vertex, so the
  // optimum over every point and reference is the optimum over the hull.
  Rng rng(13);
  for (int trial = 0; trial < 60; ++trial) {
    const auto pts = random_points(1 + rng.below(15), rng);
    OperatingPointQuery q;
    const double a = rng.uniform01(), b = rng.uniform01() * (1.0 - a);
    q.priors = {a, b, 1.0 - a - b};
    q.costs = {rng.uniform(0, 5), rng.uniform(0, 5), rng.uniform(0, 5)};
    q.mode = trial % 2 ? OperatingMode::Cost : OperatingMode::Accuracy;
    const auto best = select_operating_point(pts, kTri, q);
    std::vector<Vec3> pool = pts;
    for (const auto& r : kTri.references()) pool.push_back(r);
    double opt = q.mode == OperatingMode::Accuracy ? -1e300 : 1e300;
    for (const auto& p : pool) {
      const double s = q.mode == OperatingMode::Accuracy ? expected_accuracy(p, q) : expected_cost(p, q);
      opt = q.mode == OperatingMode::Accuracy ? std::max(opt, s) : std::min(opt, s);
    }
    CHECK(best.score == doctest::Approx(opt).epsilon(1e-12));
  }
}

TEST_CASE("operating point queries are validated") {
  const std::vector<Vec3> pts{{0.6, 0.6, 0.6}};
  OperatingPointQuery q;
  q.priors = {0.5, 0.5, 0.5};
  CHECK_THROWS_AS(select_operating_point(pts, kTri, q), std::invalid_argument);
  q.priors = {1, 0, 0};
  q.instances = 0;
  CHECK_THROWS_AS(select_operating_point(pts, kTri, q), std::invalid_argument);
  q.instances = 1;
  CHECK_THROWS_AS(select_operating_point(pts, kAug, q), std::invalid_argument);
  CHECK_THROWS_AS(select_operating_point(std::vector<Vec3>{}, kTri, q), std::invalid_argument);
}
