#include <algorithm>
#include <numeric>

#include "chemoa/evolve.hpp"

namespace chemoa {

namespace {

struct Ranked {
  std::vector<std::size_t> rank;
  std::vector<double> crowding;
};

Ranked rank_population(std::span<const ObjectiveVector> minimized) {
  Ranked r;
  r.rank.assign(minimized.size(), 0);
  r.crowding.assign(minimized.size(), 0.0);
  const auto fronts = nondominated_sort(minimized, Sense::Minimize);
  for (std::size_t f = 0; f < fronts.size(); ++f) {
    const auto cd = crowding_distance(minimized, fronts[f]);
    for (std::size_t k = 0; k < fronts[f].size(); ++k) {
      r.rank[fronts[f][k]] = f;
      r.crowding[fronts[f][k]] = cd[k];
    }
  }
  return r;
}

std::size_t tournament(const Ranked& r, std::size_t n, Rng& rng) {
  const std::size_t a = rng.below(n);
  std::size_t b = rng.below(n - 1);
  if (b >= a) ++b;
  if (r.rank[a] != r.rank[b]) return r.rank[a] < r.rank[b] ? a : b;
  if (r.crowding[a] != r.crowding[b]) return r.crowding[a] > r.crowding[b] ? a : b;
  return rng.bernoulli(0.5) ? a : b;
}

std::vector<ObjectiveVector> minimized_objectives(std::span<const Individual> pop, Sense sense) {
  std::vector<ObjectiveVector> out;
  out.reserve(pop.size());
  for (const auto& ind : pop) out.push_back(to_minimization(ind.objectives, sense));
  return out;
}

}  // namespace

RunResult run_nsga2(const Problem& problem, const AlgorithmConfig& config, std::uint64_t seed) {
  config.validate();
  const RocSpace& space = problem.space();
  const Sense sense = space.sense();
  const std::size_t n = config.population_size;
  Rng rng(seed);

  RunResult result;
  result.algorithm = "nsga2";
  result.seed = seed;
  std::vector<Individual> pop;
  pop.reserve(2 * n);
  for (std::size_t i = 0; i < n; ++i) pop.push_back(evaluate(problem, random_genotype(problem, rng)));
  result.vus_trace.push_back(vus(objectives_of(pop), space));

  std::size_t evaluations = n;
  while (evaluations < config.max_evaluations) {
    const Ranked ranked = rank_population(minimized_objectives(pop, sense));
    const std::size_t budget = std::min(n, config.max_evaluations - evaluations);
    std::vector<Individual> offspring;
    offspring.reserve(budget);
    while (offspring.size() < budget) {
      const Genotype& a = pop[tournament(ranked, n, rng)].genotype;
      const Genotype& b = pop[tournament(ranked, n, rng)].genotype;
      std::vector<Genotype> children(2);
      if (problem.genotype_kind() == GenotypeKind::Real) {
        auto pair = sbx_crossover(a.real, b.real, config.operators, rng);
        children[0].real = polynomial_mutation(pair.first, config.operators, rng);
        children[1].real = polynomial_mutation(pair.second, config.operators, rng);
      } else {
        auto pair = bit_variation(a.bits, b.bits, config.operators, rng);
        children[0].bits = std::move(pair.first);
        children[1].bits = std::move(pair.second);
      }
      for (auto& g : children) {
        if (offspring.size() < budget) offspring.push_back(evaluate(problem, std::move(g)));
      }
    }
    evaluations += offspring.size();
    for (auto& ind : offspring) pop.push_back(std::move(ind));

    // Environmental selection over parents + offspring.
    const auto combined = minimized_objectives(pop, sense);
    const auto fronts = nondominated_sort(combined, Sense::Minimize);
    std::vector<std::size_t> chosen;
    chosen.reserve(n);
    for (const auto& front : fronts) {
      if (chosen.size() + front.size() <= n) {
        chosen.insert(chosen.end(), front.begin(), front.end());
        if (chosen.size() == n) break;
        continue;
      }
      const auto cd = crowding_distance(combined, front);
      std::vector<std::size_t> order(front.size());
      std::iota(order.begin(), order.end(), std::size_t{0});
      std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return cd[x] > cd[y]; });
      for (std::size_t k = 0; chosen.size() < n; ++k) chosen.push_back(front[order[k]]);
      break;
    }
    std::sort(chosen.begin(), chosen.end());
    std::vector<Individual> next;
    next.reserve(2 * n);
    for (std::size_t i : chosen) next.push_back(std::move(pop[i]));
    pop = std::move(next);
    result.vus_trace.push_back(vus(objectives_of(pop), space));
  }
  result.population = std::move(pop);
  finalize_run(result, space, evaluations);
  return result;
}

}  // namespace chemoa
