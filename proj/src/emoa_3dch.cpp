#include <algorithm>

#include "chemoa/evolve.hpp"

namespace chemoa {

namespace {

std::size_t pick_uniform(std::span<const std::size_t> choices, Rng& rng) {
  return choices.size() == 1 ? choices[0] : choices[rng.below(choices.size())];
}

std::vector<ObjectiveVector> without(std::span<const ObjectiveVector> pts, std::size_t skip) {
  std::vector<ObjectiveVector> rest;
  rest.reserve(pts.size() - 1);
  for (std::size_t k = 0; k < pts.size(); ++k) {
    if (k != skip) rest.push_back(pts[k]);
  }
  return rest;
}

struct Removal {
  std::size_t index;
  double value;  // VUS of the set without index
};

// Minimum-contribution member of candidates; exact ties broken at random.
// Selection uses the local contribution; the chosen removal is recomputed
// so the tracked value is always the canonical VUS of the resulting set.
Removal min_contribution(const VusState& state, std::span<const std::size_t> candidates,
                         std::span<const ObjectiveVector> pts, const RocSpace& space, Rng& rng) {
  std::vector<double> delta(candidates.size());
  for (std::size_t k = 0; k < candidates.size(); ++k) delta[k] = state.contribution(candidates[k]);
  const double best = *std::min_element(delta.begin(), delta.end());
  std::vector<std::size_t> ties;
  for (std::size_t k = 0; k < candidates.size(); ++k) {
    if (delta[k] == best) ties.push_back(k);
  }
  const std::size_t index = candidates[pick_uniform(ties, rng)];
  const double value = state.removal_is_neutral(index) ? vus(without(pts, index), space) : state.value_without(index);
  return {index, value};
}

}  // namespace

ReduceOutcome non_descending_reduce(std::vector<Individual>& population, Individual offspring, const RocSpace& space,
                                    Rng& rng, double current_vus) {
  population.push_back(std::move(offspring));
  const std::size_t q = population.size() - 1;
  const auto pts = objectives_of(population);
  const LevelAssignment ranks = ch_sort(pts, space);

  ReduceOutcome out;
  out.removed = q;
  out.vus = current_vus;
  if (!ranks.redundant.empty()) {
    out.branch = ReduceBranch::Redundant;
    out.removed = pick_uniform(ranks.redundant, rng);
    if (out.removed != q) out.vus = vus(without(pts, out.removed), space);
  } else {
    const VusState state(pts, space);
    std::vector<std::size_t> candidates;
    if (ranks.levels.size() == 1) {
      const bool improved = !state.removal_is_neutral(q) && state.value() > current_vus;
      if (improved) {
        out.branch = ReduceBranch::SingleLevelImproved;
        candidates.resize(pts.size());
        for (std::size_t i = 0; i < pts.size(); ++i) candidates[i] = i;
      } else {
        out.branch = ReduceBranch::SingleLevelRejected;
      }
    } else {
      out.branch = ReduceBranch::MultiLevel;
      candidates = ranks.levels.back();
    }
    if (!candidates.empty()) {
      const Removal r = min_contribution(state, candidates, pts, space, rng);
      out.removed = r.index;
      // Without the offspring the set is the old population again.
      out.vus = r.index == q ? current_vus : r.value;
    }
  }
  if (out.vus < current_vus) {
    out.guarded = true;
    out.removed = q;
    out.vus = current_vus;
  }
  population.erase(population.begin() + static_cast<std::ptrdiff_t>(out.removed));
  return out;
}

RunResult run_3dch_emoa(const Problem& problem, const AlgorithmConfig& config, std::uint64_t seed) {
  config.validate();
  const RocSpace& space = problem.space();
  const std::size_t n = config.population_size;
  Rng rng(seed);

  RunResult result;
  result.algorithm = "3dch";
  result.seed = seed;
  auto& pop = result.population;
  pop.reserve(n + 1);
  for (std::size_t i = 0; i < n; ++i) pop.push_back(evaluate(problem, random_genotype(problem, rng)));

  double current = vus(objectives_of(pop), space);
  result.vus_trace.reserve(config.max_evaluations - n + 1);
  result.vus_trace.push_back(current);
  std::size_t evaluations = n;
  while (evaluations < config.max_evaluations) {
    const std::size_t a = rng.below(n);
    std::size_t b = rng.below(n - 1);
    if (b >= a) ++b;
    Individual child = evaluate(problem, make_offspring(problem, pop[a].genotype, pop[b].genotype, config.operators, rng));
    ++evaluations;
    const ReduceOutcome step = non_descending_reduce(pop, std::move(child), space, rng, current);
    current = step.vus;
    if (step.guarded) ++result.guarded_steps;
    result.vus_trace.push_back(current);
  }
  finalize_run(result, space, evaluations);
  return result;
}

}  // namespace chemoa
