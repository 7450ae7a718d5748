#include <algorithm>

#include "chemoa/evolve.hpp"

namespace chemoa {

std::size_t hypervolume_reduce(std::span<const ObjectiveVector> minimized, Rng& rng) {
  const auto fronts = nondominated_sort(minimized, Sense::Minimize);
  const auto& worst = fronts.back();
  if (worst.size() == 1) return worst.front();
  std::vector<ObjectiveVector> last;
  for (std::size_t i : worst) last.push_back(minimized[i]);
  const auto contrib = hypervolume_contributions(last, kHypervolumeReference);
  const double best = *std::min_element(contrib.begin(), contrib.end());
  std::vector<std::size_t> ties;
  for (std::size_t k = 0; k < worst.size(); ++k) {
    if (contrib[k] == best) ties.push_back(worst[k]);
  }
  return ties.size() == 1 ? ties[0] : ties[rng.below(ties.size())];
}

RunResult run_sms_emoa(const Problem& problem, const AlgorithmConfig& config, std::uint64_t seed) {
  config.validate();
  const RocSpace& space = problem.space();
  const Sense sense = space.sense();
  const std::size_t n = config.population_size;
  Rng rng(seed);

  RunResult result;
  result.algorithm = "sms";
  result.seed = seed;
  auto& pop = result.population;
  pop.reserve(n + 1);
  for (std::size_t i = 0; i < n; ++i) pop.push_back(evaluate(problem, random_genotype(problem, rng)));
  result.vus_trace.push_back(vus(objectives_of(pop), space));

  std::vector<ObjectiveVector> minimized;
  std::size_t evaluations = n;
  while (evaluations < config.max_evaluations) {
    const std::size_t a = rng.below(n);
    std::size_t b = rng.below(n - 1);
    if (b >= a) ++b;
    pop.push_back(evaluate(problem, make_offspring(problem, pop[a].genotype, pop[b].genotype, config.operators, rng)));
    ++evaluations;

    minimized.clear();
    for (const auto& ind : pop) minimized.push_back(to_minimization(ind.objectives, sense));
    const std::size_t removed = hypervolume_reduce(minimized, rng);
    pop.erase(pop.begin() + static_cast<std::ptrdiff_t>(removed));
    if ((evaluations - n) % n == 0 || evaluations == config.max_evaluations) {
      result.vus_trace.push_back(vus(objectives_of(pop), space));
    }
  }
  finalize_run(result, space, evaluations);
  return result;
}

}  // namespace chemoa
