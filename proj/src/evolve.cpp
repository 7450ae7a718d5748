#include "chemoa/evolve.hpp"

#include <stdexcept>

namespace chemoa {

void AlgorithmConfig::validate() const {
  if (population_size < 4) {
    throw std::invalid_argument("population size must be at least 4");
  }
  if (max_evaluations < population_size) {
    throw std::invalid_argument("max evaluations must be at least the population size");
  }
  operators.validate();
}

Genotype random_genotype(const Problem& problem, Rng& rng) {
  Genotype g;
  if (problem.genotype_kind() == GenotypeKind::Real) {
    g.real.resize(problem.dimension());
    for (double& v : g.real) v = rng.uniform01();
  } else {
    g.bits.resize(problem.dimension());
    for (auto& b : g.bits) b = rng.bernoulli(0.5) ? 1 : 0;
  }
  return g;
}

Individual evaluate(const Problem& problem, Genotype genotype) {
  Individual ind;
  ind.objectives = problem.evaluate(genotype);
  if (!ind.objectives.is_finite()) {
    throw NumericalFailure("non-finite objective from problem " + problem.name());
  }
  ind.genotype = std::move(genotype);
  ind.evaluated = true;
  return ind;
}

Genotype make_offspring(const Problem& problem, const Genotype& a, const Genotype& b, const OperatorParams& params,
                        Rng& rng) {
  Genotype child;
  if (problem.genotype_kind() == GenotypeKind::Real) {
    auto children = sbx_crossover(a.real, b.real, params, rng);
    child.real = polynomial_mutation(children.first, params, rng);
  } else {
    child.bits = bit_variation(a.bits, b.bits, params, rng).first;
  }
  return child;
}

ObjectiveVector to_minimization(const ObjectiveVector& f, Sense sense) {
  if (sense == Sense::Minimize) return f;
  return {1.0 - f.c1, 1.0 - f.c2, 1.0 - f.c3};
}

std::vector<ObjectiveVector> objectives_of(std::span<const Individual> population) {
  std::vector<ObjectiveVector> out;
  out.reserve(population.size());
  for (const auto& ind : population) out.push_back(ind.objectives);
  return out;
}

MetricRecord population_metrics(std::span<const ObjectiveVector> objectives, const RocSpace& space) {
  MetricRecord m;
  m.vus = vus(objectives, space);
  m.gini = gini(objectives);
  std::vector<ObjectiveVector> mapped;
  mapped.reserve(objectives.size());
  for (const auto& f : objectives) mapped.push_back(to_minimization(f, space.sense()));
  m.hypervolume = hypervolume3(mapped, kHypervolumeReference);
  return m;
}

void finalize_run(RunResult& result, const RocSpace& space, std::size_t evaluations) {
  const auto pts = objectives_of(result.population);
  result.level = ch_sort(pts, space).level_of(pts.size());
  result.dvus = delta_vus(pts, space);
  result.metrics = population_metrics(pts, space);
  result.metrics.evaluations = static_cast<std::int64_t>(evaluations);
}

RunResult run_algorithm(const std::string& algorithm, const Problem& problem, const AlgorithmConfig& config,
                        std::uint64_t seed) {
  if (algorithm == "3dch") return run_3dch_emoa(problem, config, seed);
  if (algorithm == "nsga2") return run_nsga2(problem, config, seed);
  if (algorithm == "sms") return run_sms_emoa(problem, config, seed);
  throw std::invalid_argument("unknown algorithm '" + algorithm + "' (expected 3dch, nsga2 or sms)");
}

}  // namespace chemoa
