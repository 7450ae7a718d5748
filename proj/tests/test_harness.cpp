#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "chemoa/harness.hpp"
#include "json.hpp"

using namespace chemoa;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("chemoa_test_" + std::to_string(::getpid())) / name;
  fs::remove_all(dir);
  return dir;
}

std::string slurp(const fs::path& file) {
  std::ifstream in(file, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

bool same_tree(const fs::path& a, const fs::path& b) {
  std::size_t count = 0;
  for (const auto& entry : fs::directory_iterator(a)) {
    const fs::path other = b / entry.path().filename();
    if (!fs::exists(other) || slurp(entry.path()) != slurp(other)) return false;
    ++count;
  }
  return count == static_cast<std::size_t>(std::distance(fs::directory_iterator(b), fs::directory_iterator{}));
}

RunConfig small(const std::string& problem, const std::string& algo, const fs::path& out) {
  RunConfig c;
  c.problem = problem;
  c.algorithm = algo;
  c.population_size = 10;
  c.max_evaluations = 200;
  c.repeats = 3;
  c.seed = 5;
  c.output_dir = out;
  return c;
}

int cli(const std::string& args) {
  const std::string cmd = std::string(CHEMOA_CLI) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

struct ThreadsEnv {
  explicit ThreadsEnv(const char* v) { ::setenv("CHEMOA_THREADS", v, 1); }
  ~ThreadsEnv() { ::unsetenv("CHEMOA_THREADS"); }
};

}  // namespace

TEST_CASE("configuration validation") {
  RunConfig c;
  CHECK_NOTHROW(c.validate());
  c.population_size = 3;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = RunConfig{};
  c.max_evaluations = 10;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = RunConfig{};
  c.repeats = 0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = RunConfig{};
  c.problem = "dtlz2";
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = RunConfig{};
  c.algorithm = "moead";
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = RunConfig{};
  c.operators.mutation_index = -1;
  CHECK_THROWS_AS(c.validate(), ConfigError);
}

TEST_CASE("worker count") {
  {
    ThreadsEnv env("3");
    CHECK(worker_count(10) == 3);
    CHECK(worker_count(2) == 2);
  }
  {
    ThreadsEnv env("zero");
    CHECK(worker_count(1) == 1);
  }
  CHECK(worker_count(1) == 1);
  CHECK(worker_count(0) == 1);
}

TEST_CASE("experiment artifacts round-trip") {
  const fs::path dir = scratch("roundtrip");
  const auto cfg = small("zejd2", "3dch", dir);
  const auto runs = run_experiment(cfg);
  REQUIRE(runs.size() == 3);
  const auto rows = read_runs_csv(dir / "runs.csv");
  REQUIRE(rows.size() == 3);
  const Problem problem = Problem::from_name(cfg.problem);
  for (std::size_t k = 0; k < rows.size(); ++k) {
    CHECK(rows[k].run_id == k);
    CHECK(rows[k].seed == 5 + k);
    CHECK(rows[k].problem == "zejd2");
    CHECK(rows[k].algorithm == "3dch");
    CHECK(rows[k].wall_ms == 0);
    CHECK(rows[k].vus == runs[k].metrics.vus);

    const auto front = read_front_csv(dir / ("front_" + std::to_string(k) + ".csv"));
    REQUIRE(front.size() == 10);
    std::vector<ObjectiveVector> pts;
    for (std::size_t i = 0; i < front.size(); ++i) {
      pts.push_back(front[i].f);
      CHECK(front[i].level == runs[k].level[i]);
      CHECK(front[i].dvus == runs[k].dvus[i]);
    }
    const auto m = population_metrics(pts, problem.space());
    CHECK(std::fabs(m.vus - rows[k].vus) < 1e-9);
    CHECK(std::fabs(m.gini - rows[k].gini) < 1e-9);
    CHECK(std::fabs(m.hypervolume - rows[k].hypervolume) < 1e-9);

    const auto trace = read_trace_csv(dir / ("trace_" + std::to_string(k) + ".csv"));
    CHECK(trace == runs[k].vus_trace);
    CHECK(trace.size() == 200 - 10 + 1);
  }
}

TEST_CASE("manifest lists every tunable") {
  const fs::path dir = scratch("manifest");
  auto cfg = small("zed1", "sms", dir);
  cfg.repeats = 1;
  cfg.max_evaluations = 20;
  run_experiment(cfg);
  const auto m = nlohmann::json::parse(slurp(dir / "manifest.json"));
  CHECK(m["problem"] == "zed1");
  CHECK(m["algorithm"] == "sms");
  CHECK(m["rng"] == "mt19937_64");
  CHECK(m["operators"]["crossover_index"] == 20.0);
  CHECK(m["operators"]["mutation_index"] == 20.0);
  CHECK(m["operators"]["crossover_probability"] == 0.9);
  CHECK(m["operators"]["mutation_probability"].get<double>() == doctest::Approx(1.0 / 3.0));
  CHECK(m["space"]["references"].size() == 3);
  CHECK(m["tolerances"].contains("hull_epsilon"));
  CHECK(m["tolerances"].contains("redundancy_distance"));
  CHECK(m["hypervolume_reference"].size() == 3);
  CHECK(m["seeds"] == nlohmann::json::array({5}));
}

TEST_CASE("artifacts are identical regardless of scheduling") {
  const fs::path serial = scratch("serial"), parallel = scratch("parallel"), again = scratch("again");
  for (const std::string algo : {"3dch", "nsga2", "sms"}) {
    {
      ThreadsEnv env("1");
      run_experiment(small("zed3", algo, serial));
      run_experiment(small("zed3", algo, again));
    }
    {
      ThreadsEnv env("3");
      run_experiment(small("zed3", algo, parallel));
    }
    CHECK(same_tree(serial, parallel));
    CHECK(same_tree(serial, again));
  }
}

TEST_CASE("budget equal to the population size records only the initial value") {
  const fs::path dir = scratch("boundary");
  auto cfg = small("rules(20,3)", "3dch", dir);
  cfg.repeats = 1;
  cfg.max_evaluations = cfg.population_size;
  run_experiment(cfg);
  CHECK(read_trace_csv(dir / "trace_0.csv").size() == 1);
}

TEST_CASE("report aggregation") {
  const fs::path a = scratch("report_3dch"), b = scratch("report_nsga2");
  run_experiment(small("zejd1", "3dch", a));
  run_experiment(small("zejd1", "nsga2", b));
  const std::vector<fs::path> dirs{a, b};
  const auto rows = build_report(dirs);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].algorithm == "3dch");
  CHECK(rows[1].algorithm == "nsga2");
  for (std::size_t r = 0; r < 2; ++r) {
    const auto raw = read_runs_csv(dirs[r] / "runs.csv");
    std::vector<double> vus, gini, hv;
    for (const auto& row : raw) {
      vus.push_back(row.vus);
      gini.push_back(row.gini);
      hv.push_back(row.hypervolume);
    }
    CHECK(rows[r].runs == 3);
    CHECK(rows[r].vus.mean == summarize(vus).mean);
    CHECK(rows[r].vus.stddev == summarize(vus).stddev);
    CHECK(rows[r].gini.mean == summarize(gini).mean);
    CHECK(rows[r].hypervolume.mean == summarize(hv).mean);
  }
  const std::string csv = report_csv(rows);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
  CHECK(report_text(rows).find("nsga2") != std::string::npos);

  const fs::path empty = scratch("empty");
  fs::create_directories(empty);
  const std::vector<fs::path> bad{empty};
  CHECK_THROWS_AS(build_report(bad), ConfigError);
  std::ofstream(empty / "runs.csv") << "run_id,problem\n0,zed1\n";
  CHECK_THROWS_AS(build_report(bad), ConfigError);
}

TEST_CASE("oracle on the perfect corner reproduces the exact volume") {
  const ObjectiveVector best_tri{1, 1, 1}, best_aug{0, 0, 0};
  const auto tri = oracle_vus(std::span(&best_tri, 1), RocSpace::three_class(), 1, 200'000);
  const auto aug = oracle_vus(std::span(&best_aug, 1), RocSpace::augmented(), 1, 200'000);
  CHECK(std::fabs(tri.front_vus - 5.0 / 6.0) < 1e-12);
  CHECK(std::fabs(aug.front_vus - 0.5) < 1e-12);
  CHECK(std::fabs(tri.gap()) < 3 * tri.mc_stderr);
  CHECK(std::fabs(aug.gap()) < 3 * aug.mc_stderr);
  CHECK_THROWS_AS(oracle_vus(Problem::rules(5, 1), 100, 1), ConfigError);
}

TEST_CASE("oracle on true-front samples") {
  const auto zed1 = oracle_vus(Problem::zed(1), 10000, 1);
  CHECK(zed1.front_vus >= 0.353);
  CHECK(zed1.front_vus < 5.0 / 6.0);
  CHECK(std::fabs(zed1.gap()) < 3 * zed1.mc_stderr);
  const auto zejd1 = oracle_vus(Problem::zejd(1), 10000, 1);
  CHECK(zejd1.front_vus >= 0.465);
  CHECK(std::fabs(zejd1.gap()) < 3 * zejd1.mc_stderr);
}

TEST_CASE("command-line exit codes") {
  const fs::path dir = scratch("cli");
  const std::string out = " --out " + dir.string();
  CHECK(cli("run --problem zed1 --algo 3dch --pop 8 --evals 16" + out) == 0);
  CHECK(fs::exists(dir / "runs.csv"));
  CHECK(cli("run --problem zed1 --algo 3dch --pop 3 --evals 16" + out) == 2);
  CHECK(cli("run --problem zed9 --algo 3dch --pop 8 --evals 16" + out) == 2);
  CHECK(cli("run --problem zed1 --algo gde3 --pop 8 --evals 16" + out) == 2);
  CHECK(cli("run --problem zed1 --pop 8 --evals 4" + out) == 2);
  CHECK(cli("run --bogus-flag") == 2);
  CHECK(cli("") == 2);
  CHECK(cli("report " + dir.string()) == 0);
  const fs::path empty = scratch("cli_empty");
  fs::create_directories(empty);
  CHECK(cli("report " + empty.string()) == 2);
  CHECK(cli("oracle --problem zed1 --samples 100 --mc 1000") == 0);
  CHECK(cli("oracle --problem rules(5,1)") == 2);
}
