#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "chemoa/metrics.hpp"
#include "chemoa/operators.hpp"
#include "chemoa/problems.hpp"
#include "chemoa/random.hpp"
#include "chemoa/ranking.hpp"

namespace chemoa {

struct Individual {
  Genotype genotype;
  ObjectiveVector objectives;
  bool evaluated = false;
};

/// Raised when a problem returns a non-finite objective.
class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct AlgorithmConfig {
  std::size_t population_size = 100;
  std::size_t max_evaluations = 25000;
  OperatorParams operators;

  /// Throws std::invalid_argument unless N >= 4 and max evaluations >= N.
  void validate() const;
};

struct RunResult {
  std::string algorithm;
  std::uint64_t seed = 0;
  std::vector<Individual> population;
  /// ch_sort level (1-based) and VUS contribution of every final member.
  std::vector<std::size_t> level;
  std::vector<double> dvus;
  /// VUS after initialization, then after every iteration. An iteration is
  /// one evaluation for the steady-state 3DCH-EMOA and one generation of N
  /// evaluations for the baselines.
  std::vector<double> vus_trace;
  MetricRecord metrics;
  /// Reduce steps whose chosen removal would have lowered the VUS and which
  /// therefore discarded the offspring instead (3DCH-EMOA only).
  std::size_t guarded_steps = 0;
};

/// Uniform random genotype over the problem's domain.
Genotype random_genotype(const Problem& problem, Rng& rng);

/// Evaluates and checks finiteness; throws NumericalFailure otherwise.
Individual evaluate(const Problem& problem, Genotype genotype);

/// One child from two parents: SBX (first child) plus polynomial mutation
/// for real genotypes, single-point crossover plus bit flips for masks.
Genotype make_offspring(const Problem& problem, const Genotype& a, const Genotype& b, const OperatorParams& params,
                        Rng& rng);

enum class ReduceBranch { Redundant, SingleLevelImproved, SingleLevelRejected, MultiLevel };

struct ReduceOutcome {
  ReduceBranch branch = ReduceBranch::SingleLevelRejected;
  /// Index of the removed individual in population + offspring (offspring
  /// last, at index N).
  std::size_t removed = 0;
  double vus = 0.0;
  bool guarded = false;
};

/// Adds offspring to population and removes one individual:
///   - a redundant individual (uniformly at random) when any exists;
///   - otherwise, with a single hull level, the minimum-contribution member
///     if the offspring raised the VUS, else the offspring itself;
///   - otherwise the minimum-contribution member of the last level.
/// Contribution ties are broken uniformly at random. current_vus must be
/// vus() of the population. If the chosen removal would leave a VUS below
/// current_vus (possible through rounding, or when a contributing point sits
/// in the last level) the offspring is dropped instead and guarded is set.
/// The population keeps its order with the removed entry erased.
ReduceOutcome non_descending_reduce(std::vector<Individual>& population, Individual offspring, const RocSpace& space,
                                    Rng& rng, double current_vus);

/// SMS-EMOA survivor selection over minimization objectives: index of the
/// least hypervolume contributor of the worst Pareto front (reference
/// kHypervolumeReference), ties broken uniformly at random.
std::size_t hypervolume_reduce(std::span<const ObjectiveVector> minimized, Rng& rng);

RunResult run_3dch_emoa(const Problem& problem, const AlgorithmConfig& config, std::uint64_t seed);
RunResult run_nsga2(const Problem& problem, const AlgorithmConfig& config, std::uint64_t seed);
RunResult run_sms_emoa(const Problem& problem, const AlgorithmConfig& config, std::uint64_t seed);

/// Dispatch on "3dch", "nsga2" or "sms"; throws std::invalid_argument.
RunResult run_algorithm(const std::string& algorithm, const Problem& problem, const AlgorithmConfig& config,
                        std::uint64_t seed);

/// Reference point for the hypervolume metric and SMS-EMOA selection, in
/// minimization coordinates.
inline constexpr ObjectiveVector kHypervolumeReference{1.1, 1.1, 1.1};

/// Objectives as minimization coordinates (f -> 1 - f for maximization).
ObjectiveVector to_minimization(const ObjectiveVector& f, Sense sense);

/// VUS, gini and hypervolume of a final population. Timing and evaluation
/// counts are left for the caller.
MetricRecord population_metrics(std::span<const ObjectiveVector> objectives, const RocSpace& space);

/// Fills level, dvus and metrics of a finished run from its population.
void finalize_run(RunResult& result, const RocSpace& space, std::size_t evaluations);

std::vector<ObjectiveVector> objectives_of(std::span<const Individual> population);

}  // namespace chemoa
