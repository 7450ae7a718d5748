#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "chemoa/harness.hpp"

namespace {

constexpr int kConfigError = 2;
constexpr int kNumericalFailure = 3;

int run_command(const chemoa::RunConfig& config) {
  const auto runs = chemoa::run_experiment(config);
  for (std::size_t k = 0; k < runs.size(); ++k) {
    const auto& m = runs[k].metrics;
    std::printf("run %zu seed %llu: vus %.6f gini %.4f hypervolume %.5f\n", k,
                static_cast<unsigned long long>(runs[k].seed), m.vus, m.gini, m.hypervolume);
  }
  std::printf("wrote %s\n", config.output_dir.string().c_str());
  return 0;
}

int oracle_command(const std::string& name, std::size_t samples, std::uint64_t seed, std::size_t mc, bool perfect) {
  const auto problem = chemoa::Problem::from_name(name);
  chemoa::OracleResult r;
  if (perfect) {
    const chemoa::ObjectiveVector corner = problem.space().perfect_point();
    r = chemoa::oracle_vus(std::span(&corner, 1), problem.space(), seed, mc);
  } else {
    r = chemoa::oracle_vus(problem, samples, seed, mc);
  }
  std::printf("samples      %zu\n", r.samples);
  std::printf("front_vus    %.9f\n", r.front_vus);
  std::printf("mc_volume    %.9f  (stderr %.2e, %zu samples)\n", r.mc_volume, r.mc_stderr, r.mc_samples);
  std::printf("gap          %+.3e  (%.2f stderr)\n", r.gap(), r.mc_stderr > 0 ? r.gap() / r.mc_stderr : 0.0);
  return 0;
}

int report_command(const std::vector<std::string>& dirs, const std::string& csv) {
  const std::vector<std::filesystem::path> paths(dirs.begin(), dirs.end());
  const auto rows = chemoa::build_report(paths);
  std::cout << chemoa::report_text(rows);
  if (!csv.empty()) {
    std::ofstream out(csv, std::ios::binary | std::ios::trunc);
    out << chemoa::report_csv(rows);
    if (!out) throw chemoa::ConfigError("cannot write " + csv);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Convex-hull multiobjective evolution in ROC space"};
  app.require_subcommand(1);

  chemoa::RunConfig config;
  std::string out_dir = config.output_dir.string();
  double pm = -1.0;
  auto* run = app.add_subcommand("run", "Run repeated experiments and write artifacts");
  run->add_option("--problem", config.problem, "zejd1..3, zed1..3 or rules(n,seed)")->capture_default_str();
  run->add_option("--algo", config.algorithm, "3dch, nsga2 or sms")->capture_default_str();
  run->add_option("--pop", config.population_size, "Population size")->capture_default_str();
  run->add_option("--evals", config.max_evaluations, "Evaluation budget")->capture_default_str();
  run->add_option("--seed", config.seed, "Seed of the first repeat")->capture_default_str();
  run->add_option("--repeats", config.repeats, "Independent repeats")->capture_default_str();
  run->add_option("--out", out_dir, "Output directory")->capture_default_str();
  run->add_option("--pc", config.operators.crossover_probability, "Crossover probability")->capture_default_str();
  run->add_option("--pm", pm, "Mutation probability per coordinate (default 1/n)");
  run->add_option("--eta-c", config.operators.crossover_index, "SBX distribution index")->capture_default_str();
  run->add_option("--eta-m", config.operators.mutation_index, "Mutation distribution index")->capture_default_str();
  run->add_flag("--timing", config.timing, "Record wall milliseconds (artifacts then vary between executions)");

  std::string oracle_problem = "zed1";
  std::size_t samples = 10000;
  std::uint64_t oracle_seed = 1;
  std::size_t mc = 1000000;
  bool perfect = false;
  auto* oracle = app.add_subcommand("oracle", "Compare the VUS of a sampled true front with Monte-Carlo");
  oracle->add_option("--problem", oracle_problem, "zejd1..3 or zed1..3")->capture_default_str();
  oracle->add_option("--samples", samples, "Front sample size")->capture_default_str();
  oracle->add_option("--seed", oracle_seed, "Seed")->capture_default_str();
  oracle->add_option("--mc", mc, "Monte-Carlo samples")->capture_default_str();
  oracle->add_flag("--perfect", perfect, "Use the perfect corner of the space as the only point");

  std::vector<std::string> dirs;
  std::string csv;
  auto* report = app.add_subcommand("report", "Aggregate runs.csv files into a mean/std table");
  report->add_option("dirs", dirs, "Experiment directories")->required();
  report->add_option("--csv", csv, "Also write the table as CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigError;
  }

  try {
    if (run->parsed()) {
      config.output_dir = out_dir;
      if (pm >= 0.0) config.operators.mutation_probability = pm;
      return run_command(config);
    }
    if (oracle->parsed()) return oracle_command(oracle_problem, samples, oracle_seed, mc, perfect);
    return report_command(dirs, csv);
  } catch (const chemoa::NumericalFailure& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return kNumericalFailure;
  } catch (const chemoa::ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kConfigError;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kConfigError;
  }
}
