#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "chemoa/operators.hpp"

using namespace chemoa;

namespace {

std::vector<double> random_vector(std::size_t n, Rng& rng) {
  std::vector<double> v(n);
  for (auto& x : v) x = rng.uniform01();
  return v;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v[v.size() / 2];
}

// Median |child - parent| per coordinate over many SBX draws.
double sbx_spread(double eta, std::uint64_t seed) {
  OperatorParams params;
  params.crossover_probability = 1.0;
  params.crossover_index = eta;
  Rng rng(seed);
  std::vector<double> moves;
  for (int s = 0; s < 10000; ++s) {
    const std::vector<double> a{rng.uniform(0.3, 0.5)}, b{rng.uniform(0.5, 0.7)};
    const auto [c1, c2] = sbx_crossover(a, b, params, rng);
    if (c1[0] == a[0] || c1[0] == b[0]) continue;  // coordinate not crossed
    moves.push_back(std::min(std::fabs(c1[0] - a[0]), std::fabs(c1[0] - b[0])));
  }
  return median(moves);
}

}  // namespace

TEST_CASE("SBX leaves identical parents unchanged") {
  Rng rng(1);
  for (double eta : {0.5, 2.0, 20.0, 100.0}) {
    OperatorParams params;
    params.crossover_probability = 1.0;
    params.crossover_index = eta;
    for (int s = 0; s < 200; ++s) {
      const auto p = random_vector(5, rng);
      const auto [c1, c2] = sbx_crossover(p, p, params, rng);
      CHECK(c1 == p);
      CHECK(c2 == p);
    }
  }
}

TEST_CASE("SBX and polynomial mutation stay within bounds") {
  Rng rng(2);
  OperatorParams params;
  params.crossover_index = 1.0;
  params.mutation_index = 1.0;
  params.mutation_probability = 1.0;
  bool ok = true;
  for (int s = 0; s < 100000; ++s) {
    const auto a = random_vector(3, rng), b = random_vector(3, rng);
    const auto [c1, c2] = sbx_crossover(a, b, params, rng);
    const auto m = polynomial_mutation(c1, params, rng);
    for (const auto* v : {&c1, &c2, &m}) {
      for (double x : *v) ok = ok && x >= 0.0 && x <= 1.0;
    }
  }
  CHECK(ok);
  const std::vector<double> a{2.0, 2.5}, b{3.0, 2.5};
  const auto [c1, c2] = sbx_crossover(a, b, params, rng, 2.0, 3.0);
  for (double x : c1) CHECK((x >= 2.0 && x <= 3.0));
}

TEST_CASE("SBX spread shrinks as the distribution index grows") {
  CHECK(sbx_spread(2.0, 3) > sbx_spread(20.0, 3));
}

TEST_CASE("crossover probability zero copies the parents") {
  Rng rng(4);
  OperatorParams params;
  params.crossover_probability = 0.0;
  const auto a = random_vector(4, rng), b = random_vector(4, rng);
  const auto [c1, c2] = sbx_crossover(a, b, params, rng);
  CHECK(c1 == a);
  CHECK(c2 == b);
}

TEST_CASE("polynomial mutation rates") {
  Rng rng(5);
  OperatorParams off;
  off.mutation_probability = 0.0;
  OperatorParams on;
  on.mutation_probability = 1.0;
  std::size_t changed = 0, total = 0;
  for (int s = 0; s < 10000; ++s) {
    const auto x = random_vector(3, rng);
    CHECK(polynomial_mutation(x, off, rng) == x);
    const auto y = polynomial_mutation(x, on, rng);
    for (std::size_t i = 0; i < x.size(); ++i) changed += y[i] != x[i];
    total += x.size();
  }
  CHECK(static_cast<double>(changed) / static_cast<double>(total) > 0.99);
}

TEST_CASE("single-point crossover definition") {
  const std::vector<std::uint8_t> m1{1, 1, 1, 1, 1}, m2{0, 0, 0, 0, 0};
  const auto [c1, c2] = single_point_crossover(m1, m2, 2);
  CHECK(c1 == std::vector<std::uint8_t>{1, 1, 0, 0, 0});
  CHECK(c2 == std::vector<std::uint8_t>{0, 0, 1, 1, 1});
  const std::vector<std::uint8_t> shorter{1, 0};
  CHECK_THROWS_AS(single_point_crossover(m1, shorter, 1), std::invalid_argument);
}

TEST_CASE("bit variation") {
  Rng rng(6);
  std::vector<std::uint8_t> m1(50), m2(50);
  for (auto& b : m1) b = rng.bernoulli(0.5);
  for (auto& b : m2) b = rng.bernoulli(0.5);

  OperatorParams none;
  none.crossover_probability = 0.0;
  none.mutation_probability = 0.0;
  const auto [a, b] = bit_variation(m1, m2, none, rng);
  CHECK(a == m1);
  CHECK(b == m2);

  // Crossover only: every child is a prefix of one parent joined to the
  // suffix of the other.
  OperatorParams cross;
  cross.crossover_probability = 1.0;
  cross.mutation_probability = 0.0;
  for (int s = 0; s < 100; ++s) {
    const auto [c1, c2] = bit_variation(m1, m2, cross, rng);
    bool found = false;
    for (std::size_t k = 1; k < m1.size(); ++k) {
      if (single_point_crossover(m1, m2, k) == MaskPair{c1, c2}) found = true;
    }
    CHECK(found);
  }

  OperatorParams mutate;
  mutate.crossover_probability = 0.0;  // default mutation rate 1/n
  double flips = 0.0;
  for (int s = 0; s < 10000; ++s) {
    const auto [c1, c2] = bit_variation(m1, m2, mutate, rng);
    for (std::size_t i = 0; i < m1.size(); ++i) flips += c1[i] != m1[i];
  }
  const double mean = flips / 10000.0;
  CHECK(mean >= 0.9);
  CHECK(mean <= 1.1);
}

TEST_CASE("operator parameter validation") {
  OperatorParams p;
  CHECK_NOTHROW(p.validate());
  CHECK(p.mutation_probability_for(4) == 0.25);
  p.crossover_probability = 1.5;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = OperatorParams{};
  p.mutation_probability = -0.1;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = OperatorParams{};
  p.crossover_index = 0.0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}
