#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "chemoa/evolve.hpp"

namespace chemoa {

/// Bad user input: unknown names, out-of-range sizes, unreadable or
/// malformed result files. The CLI maps it to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string problem = "zejd1";
  std::string algorithm = "3dch";
  std::size_t population_size = 50;
  std::size_t max_evaluations = 25000;
  std::uint64_t seed = 1;
  std::size_t repeats = 1;
  OperatorParams operators;
  std::filesystem::path output_dir = "out";
  /// Record wall-clock milliseconds in runs.csv. Off by default so that
  /// artifacts are byte-identical across executions.
  bool timing = false;

  /// Throws ConfigError unless N >= 4, evaluations >= N, repeats >= 1 and
  /// problem, algorithm and operator parameters are valid.
  void validate() const;
};

/// Worker threads for n independent tasks: CHEMOA_THREADS when set to a
/// positive integer, otherwise the hardware concurrency, never more than n.
std::size_t worker_count(std::size_t tasks);

/// Runs repeats with seeds seed, seed+1, ... (concurrently when allowed)
/// and writes manifest.json, runs.csv, front_<id>.csv and trace_<id>.csv
/// into output_dir. Run ids are the repeat index. Returns the runs in
/// repeat order. NumericalFailure propagates.
std::vector<RunResult> run_experiment(const RunConfig& config);

struct RunRow {
  std::size_t run_id = 0;
  std::string problem;
  std::string algorithm;
  std::uint64_t seed = 0;
  double vus = 0.0;
  double gini = 0.0;
  double hypervolume = 0.0;
  std::int64_t wall_ms = 0;
};

struct FrontRow {
  ObjectiveVector f;
  std::size_t level = 0;
  double dvus = 0.0;
};

/// Readers for the files written by run_experiment; throw ConfigError on a
/// missing file or a header/field mismatch.
std::vector<RunRow> read_runs_csv(const std::filesystem::path& file);
std::vector<FrontRow> read_front_csv(const std::filesystem::path& file);
std::vector<double> read_trace_csv(const std::filesystem::path& file);

struct OracleResult {
  std::size_t samples = 0;
  double front_vus = 0.0;    // rocch VUS of the sampled front
  double mc_volume = 0.0;    // Monte-Carlo volume of the same region
  double mc_stderr = 0.0;
  std::size_t mc_samples = 0;
  double gap() const { return front_vus - mc_volume; }
};

/// VUS of a samples-point true-front sample next to a Monte-Carlo estimate
/// of the feasible region the sampled surface dominates. The estimate
/// triangulates the sample grid in parameter space and tests each uniform
/// point of the unit cube against the interpolated surface. On dented
/// variants the two differ by the dent the hull fills.
OracleResult oracle_vus(const Problem& problem, std::size_t samples, std::uint64_t seed,
                        std::size_t mc_samples = 1'000'000);

/// Same comparison for an explicit point set, testing Monte-Carlo points by
/// direct dominance against each member (a staircase, so only equal to the
/// hull volume for sets such as a single point).
OracleResult oracle_vus(std::span<const ObjectiveVector> points, const RocSpace& space, std::uint64_t seed,
                        std::size_t mc_samples = 1'000'000);

struct ReportRow {
  std::string problem;
  std::string algorithm;
  std::size_t runs = 0;
  Summary vus, gini, hypervolume, wall_ms;
};

/// Aggregates runs.csv of every directory into one row per problem and
/// algorithm, in order of first appearance. Throws ConfigError when a
/// directory has no runs.csv or a file does not match the schema.
std::vector<ReportRow> build_report(std::span<const std::filesystem::path> dirs);
std::string report_csv(std::span<const ReportRow> rows);
std::string report_text(std::span<const ReportRow> rows);

}  // namespace chemoa
