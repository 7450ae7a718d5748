#include "chemoa/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

#include "json.hpp"

namespace chemoa {

namespace fs = std::filesystem;

namespace {

constexpr const char* kRunsHeader = "run_id,problem,algo,seed,vus,gini,hypervolume,wall_ms";
constexpr const char* kFrontHeader = "f1,f2,f3,level,dvus";
constexpr const char* kTraceHeader = "iteration,vus";

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.16e", x);
  return buf;
}

class Output {
 public:
  explicit Output(const fs::path& file) : file_(file), out_(file, std::ios::binary | std::ios::trunc) {
    if (!out_) throw ConfigError("cannot write " + file.string());
  }
  std::ofstream& stream() { return out_; }
  void close() {
    out_.close();
    if (!out_) throw ConfigError("write failed for " + file_.string());
  }

 private:
  fs::path file_;
  std::ofstream out_;
};

void write_front(const fs::path& file, const RunResult& run) {
  Output out(file);
  auto& s = out.stream();
  s << kFrontHeader << '\n';
  for (std::size_t i = 0; i < run.population.size(); ++i) {
    const auto& f = run.population[i].objectives;
    s << num(f.c1) << ',' << num(f.c2) << ',' << num(f.c3) << ',' << run.level[i] << ',' << num(run.dvus[i]) << '\n';
  }
  out.close();
}

void write_trace(const fs::path& file, const RunResult& run) {
  Output out(file);
  auto& s = out.stream();
  s << kTraceHeader << '\n';
  for (std::size_t i = 0; i < run.vus_trace.size(); ++i) s << i << ',' << num(run.vus_trace[i]) << '\n';
  out.close();
}

nlohmann::json manifest(const RunConfig& config, const Problem& problem) {
  using nlohmann::json;
  const RocSpace& space = problem.space();
  json refs = json::array();
  for (const auto& r : space.references()) refs.push_back({r.c1, r.c2, r.c3});
  json seeds = json::array();
  for (std::size_t k = 0; k < config.repeats; ++k) seeds.push_back(config.seed + k);
  const auto& op = config.operators;
  const Halfspace& h = space.feasible_side();
  json m;
  m["problem"] = problem.name();
  m["algorithm"] = config.algorithm;
  m["population_size"] = config.population_size;
  m["max_evaluations"] = config.max_evaluations;
  m["seed"] = config.seed;
  m["repeats"] = config.repeats;
  m["seeds"] = seeds;
  m["timing"] = config.timing;
  m["rng"] = std::string(Rng::kAlgorithm);
  m["operators"] = {
      {"crossover_probability", op.crossover_probability},
      {"mutation_probability", op.mutation_probability_for(problem.dimension())},
      {"crossover_index", op.crossover_index},
      {"mutation_index", op.mutation_index},
      {"real_crossover", "sbx"},
      {"real_mutation", "polynomial"},
      {"mask_crossover", "single_point"},
      {"mask_mutation", "bit_flip"},
  };
  m["space"] = {
      {"name", std::string(space.name())},
      {"sense", space.sense() == Sense::Minimize ? "minimize" : "maximize"},
      {"references", refs},
      {"feasible_normal", {h.normal().c1, h.normal().c2, h.normal().c3}},
      {"feasible_offset", h.offset()},
  };
  m["tolerances"] = {
      {"hull_epsilon", kHullEpsilon},
      {"redundancy_distance", kRedundancyDistance},
  };
  const auto& ref = kHypervolumeReference;
  m["hypervolume_reference"] = {ref.c1, ref.c2, ref.c3};
  m["selection"] = {
      {"3dch", "random distinct parents; non-descending hull-level reduce"},
      {"nsga2", "binary tournament on rank then crowding"},
      {"sms", "random distinct parents; least hypervolume contributor of the last front"},
  };
  m["files"] = {
      {"runs", kRunsHeader},
      {"front", kFrontHeader},
      {"trace", kTraceHeader},
  };
  return m;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double to_double(const std::string& s, const fs::path& file) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || *end != '\0') throw ConfigError("bad number '" + s + "' in " + file.string());
  return v;
}

long long to_integer(const std::string& s, const fs::path& file) {
  char* end = nullptr;
  const long long v = std::strtoll(s.c_str(), &end, 10);
  if (s.empty() || *end != '\0') throw ConfigError("bad integer '" + s + "' in " + file.string());
  return v;
}

// Rows of a CSV file with the given header and column count.
std::vector<std::vector<std::string>> read_table(const fs::path& file, const char* header) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw ConfigError("cannot read " + file.string());
  std::string line;
  if (!std::getline(in, line) || line != header) {
    throw ConfigError("unexpected header in " + file.string() + " (expected " + header + ")");
  }
  const std::size_t columns = split(header).size();
  std::vector<std::vector<std::string>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto fields = split(line);
    if (fields.size() != columns) throw ConfigError("wrong field count in " + file.string());
    rows.push_back(std::move(fields));
  }
  return rows;
}

}  // namespace

void RunConfig::validate() const {
  try {
    Problem::from_name(problem);
    if (algorithm != "3dch" && algorithm != "nsga2" && algorithm != "sms") {
      throw std::invalid_argument("unknown algorithm '" + algorithm + "' (expected 3dch, nsga2 or sms)");
    }
    if (repeats < 1) throw std::invalid_argument("repeats must be at least 1");
    AlgorithmConfig{population_size, max_evaluations, operators}.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

std::size_t worker_count(std::size_t tasks) {
  std::size_t n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("CHEMOA_THREADS")) {
    char* end = nullptr;
    const long long v = std::strtoll(env, &end, 10);
    if (*env != '\0' && *end == '\0' && v > 0) n = static_cast<std::size_t>(v);
  }
  return std::max<std::size_t>(1, std::min(n, tasks));
}

std::vector<RunResult> run_experiment(const RunConfig& config) {
  config.validate();
  const Problem problem = Problem::from_name(config.problem);
  const AlgorithmConfig algo{config.population_size, config.max_evaluations, config.operators};
  std::error_code ec;
  fs::create_directories(config.output_dir, ec);
  if (ec) throw ConfigError("cannot create " + config.output_dir.string() + ": " + ec.message());

  {
    Output out(config.output_dir / "manifest.json");
    out.stream() << manifest(config, problem).dump(2) << '\n';
    out.close();
  }

  std::vector<RunResult> runs(config.repeats);
  std::vector<std::exception_ptr> errors(config.repeats);
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  auto work = [&] {
    for (std::size_t k = next++; k < config.repeats && !failed; k = next++) {
      try {
        const auto start = std::chrono::steady_clock::now();
        RunResult r = run_algorithm(config.algorithm, problem, algo, config.seed + k);
        const auto elapsed = std::chrono::steady_clock::now() - start;
        r.metrics.wall_time_ms =
            config.timing ? std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count() : 0;
        const std::string id = std::to_string(k);
        write_front(config.output_dir / ("front_" + id + ".csv"), r);
        write_trace(config.output_dir / ("trace_" + id + ".csv"), r);
        runs[k] = std::move(r);
      } catch (...) {
        errors[k] = std::current_exception();
        failed = true;
      }
    }
  };
  const std::size_t workers = worker_count(config.repeats);
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  Output out(config.output_dir / "runs.csv");
  auto& s = out.stream();
  s << kRunsHeader << '\n';
  for (std::size_t k = 0; k < runs.size(); ++k) {
    const auto& m = runs[k].metrics;
    s << k << ',' << problem.name() << ',' << config.algorithm << ',' << runs[k].seed << ',' << num(m.vus) << ','
      << num(m.gini) << ',' << num(m.hypervolume) << ',' << m.wall_time_ms << '\n';
  }
  out.close();
  return runs;
}

std::vector<RunRow> read_runs_csv(const fs::path& file) {
  std::vector<RunRow> out;
  for (const auto& f : read_table(file, kRunsHeader)) {
    RunRow r;
    r.run_id = static_cast<std::size_t>(to_integer(f[0], file));
    r.problem = f[1];
    r.algorithm = f[2];
    r.seed = static_cast<std::uint64_t>(to_integer(f[3], file));
    r.vus = to_double(f[4], file);
    r.gini = to_double(f[5], file);
    r.hypervolume = to_double(f[6], file);
    r.wall_ms = to_integer(f[7], file);
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<FrontRow> read_front_csv(const fs::path& file) {
  std::vector<FrontRow> out;
  for (const auto& f : read_table(file, kFrontHeader)) {
    FrontRow r;
    r.f = {to_double(f[0], file), to_double(f[1], file), to_double(f[2], file)};
    r.level = static_cast<std::size_t>(to_integer(f[3], file));
    r.dvus = to_double(f[4], file);
    out.push_back(r);
  }
  return out;
}

std::vector<double> read_trace_csv(const fs::path& file) {
  std::vector<double> out;
  for (const auto& f : read_table(file, kTraceHeader)) {
    if (static_cast<std::size_t>(to_integer(f[0], file)) != out.size()) {
      throw ConfigError("trace iterations out of order in " + file.string());
    }
    out.push_back(to_double(f[1], file));
  }
  return out;
}

namespace {

// Piecewise-linear surface over a parameter grid, located by its projection
// onto the first two objectives.
class SurfaceGraph {
 public:
  SurfaceGraph(std::vector<Vec3> nodes, std::size_t k) : nodes_(std::move(nodes)) {
    for (std::size_t i = 0; i + 1 < k; ++i) {
      for (std::size_t j = 0; j + 1 < k; ++j) {
        const std::size_t a = i * k + j, b = (i + 1) * k + j, c = (i + 1) * k + j + 1, d = i * k + j + 1;
        add(a, b, c);
        add(a, c, d);
      }
    }
    lo_ = hi_ = {nodes_[0].c1, nodes_[0].c2, 0};
    for (const Vec3& p : nodes_) {
      lo_.c1 = std::min(lo_.c1, p.c1);
      lo_.c2 = std::min(lo_.c2, p.c2);
      hi_.c1 = std::max(hi_.c1, p.c1);
      hi_.c2 = std::max(hi_.c2, p.c2);
    }
    cells_ = std::max<std::size_t>(1, k);
    buckets_.assign(cells_ * cells_, {});
    for (std::size_t t = 0; t < tris_.size(); ++t) {
      const auto& tri = tris_[t];
      double x0 = 1e300, x1 = -1e300, y0 = 1e300, y1 = -1e300;
      for (std::size_t v : tri) {
        x0 = std::min(x0, nodes_[v].c1);
        x1 = std::max(x1, nodes_[v].c1);
        y0 = std::min(y0, nodes_[v].c2);
        y1 = std::max(y1, nodes_[v].c2);
      }
      for (std::size_t cx = cell(x0, 0); cx <= cell(x1, 0); ++cx) {
        for (std::size_t cy = cell(y0, 1); cy <= cell(y1, 1); ++cy) buckets_[cx * cells_ + cy].push_back(t);
      }
    }
  }

  // Interpolated third coordinate above (x, y); false outside the projection.
  bool height(double x, double y, double& h) const {
    if (x < lo_.c1 || x > hi_.c1 || y < lo_.c2 || y > hi_.c2) return false;
    for (std::size_t t : buckets_[cell(x, 0) * cells_ + cell(y, 1)]) {
      const auto& tri = tris_[t];
      const Vec3& a = nodes_[tri[0]];
      const Vec3& b = nodes_[tri[1]];
      const Vec3& c = nodes_[tri[2]];
      const double det = (b.c1 - a.c1) * (c.c2 - a.c2) - (c.c1 - a.c1) * (b.c2 - a.c2);
      const double u = ((x - a.c1) * (c.c2 - a.c2) - (c.c1 - a.c1) * (y - a.c2)) / det;
      const double v = ((b.c1 - a.c1) * (y - a.c2) - (x - a.c1) * (b.c2 - a.c2)) / det;
      constexpr double tol = -1e-12;
      if (u >= tol && v >= tol && 1.0 - u - v >= tol) {
        h = a.c3 + u * (b.c3 - a.c3) + v * (c.c3 - a.c3);
        return true;
      }
    }
    return false;
  }

 private:
  void add(std::size_t a, std::size_t b, std::size_t c) {
    const Vec3& p = nodes_[a];
    const Vec3& q = nodes_[b];
    const Vec3& r = nodes_[c];
    const double det = (q.c1 - p.c1) * (r.c2 - p.c2) - (r.c1 - p.c1) * (q.c2 - p.c2);
    if (std::fabs(det) > 1e-15) tris_.push_back({a, b, c});
  }

  std::size_t cell(double v, int axis) const {
    const double lo = axis == 0 ? lo_.c1 : lo_.c2;
    const double hi = axis == 0 ? hi_.c1 : hi_.c2;
    if (hi <= lo) return 0;
    const auto c = static_cast<std::ptrdiff_t>((v - lo) / (hi - lo) * static_cast<double>(cells_));
    return static_cast<std::size_t>(std::clamp<std::ptrdiff_t>(c, 0, static_cast<std::ptrdiff_t>(cells_) - 1));
  }

  std::vector<Vec3> nodes_;
  std::vector<std::array<std::size_t, 3>> tris_;
  std::vector<std::vector<std::size_t>> buckets_;
  std::size_t cells_ = 1;
  Vec3 lo_, hi_;
};

// Separate stream from the front sample, which uses the seed itself.
constexpr std::uint64_t kMonteCarloSalt = 0x9e3779b97f4a7c15ULL;

template <class Member>
void monte_carlo(OracleResult& out, const RocSpace& space, std::uint64_t seed, std::size_t mc_samples,
                 Member member) {
  if (mc_samples == 0) throw ConfigError("Monte-Carlo sample count must be positive");
  Rng rng(seed ^ kMonteCarloSalt);
  std::size_t hits = 0;
  for (std::size_t s = 0; s < mc_samples; ++s) {
    Vec3 y;
    y.c1 = rng.uniform01();
    y.c2 = rng.uniform01();
    y.c3 = rng.uniform01();
    if (space.feasible_side().contains(y) && member(y)) ++hits;
  }
  const double p = static_cast<double>(hits) / static_cast<double>(mc_samples);
  out.mc_samples = mc_samples;
  out.mc_volume = p;
  out.mc_stderr = std::sqrt(p * (1.0 - p) / static_cast<double>(mc_samples));
}

}  // namespace

OracleResult oracle_vus(std::span<const ObjectiveVector> points, const RocSpace& space, std::uint64_t seed,
                        std::size_t mc_samples) {
  if (points.empty()) throw ConfigError("oracle needs at least one point");
  OracleResult out;
  out.samples = points.size();
  out.front_vus = vus(points, space);
  monte_carlo(out, space, seed, mc_samples, [&](const Vec3& y) {
    return std::any_of(points.begin(), points.end(), [&](const Vec3& p) { return space.weakly_dominates(p, y); });
  });
  return out;
}

OracleResult oracle_vus(const Problem& problem, std::size_t samples, std::uint64_t seed, std::size_t mc_samples) {
  if (problem.family() == ProblemFamily::Rules) throw ConfigError("oracle needs a zejd or zed problem");
  if (samples == 0) throw ConfigError("oracle needs at least one sample");
  const auto front = sample_true_front(problem, samples, seed);
  std::size_t k = 1;
  while ((k + 1) * (k + 1) <= samples) ++k;
  if (k < 2) return oracle_vus(front, problem.space(), seed, mc_samples);

  // The grid part of the sample, before clamping: clamped points dominate
  // the same part of the unit cube as their raw counterparts.
  const FrontDomain dom = front_domain(problem);
  std::vector<Vec3> nodes;
  nodes.reserve(k * k);
  for (std::size_t i = 0; i < k; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(k - 1);
    for (std::size_t j = 0; j < k; ++j) {
      const double u = static_cast<double>(j) / static_cast<double>(k - 1);
      const double x[3] = {dom.x1_lo + (dom.x1_hi - dom.x1_lo) * t, dom.x2_lo + (dom.x2_hi - dom.x2_lo) * u, 0.0};
      nodes.push_back(problem.family() == ProblemFamily::Zejd ? eval_zejd_unclamped(problem.variant(), x)
                                                              : eval_zed(problem.variant(), x));
    }
  }
  const SurfaceGraph surface(std::move(nodes), k);
  const bool minimize = problem.space().sense() == Sense::Minimize;

  OracleResult out;
  out.samples = samples;
  out.front_vus = vus(front, problem.space());
  monte_carlo(out, problem.space(), seed, mc_samples, [&](const Vec3& y) {
    double h = 0.0;
    if (!surface.height(y.c1, y.c2, h)) return false;
    return minimize ? y.c3 >= h : y.c3 <= h;
  });
  return out;
}

std::vector<ReportRow> build_report(std::span<const fs::path> dirs) {
  if (dirs.empty()) throw ConfigError("report needs at least one experiment directory");
  struct Acc {
    std::vector<double> vus, gini, hypervolume, wall_ms;
  };
  std::vector<std::pair<std::string, std::string>> order;
  std::map<std::pair<std::string, std::string>, Acc> acc;
  for (const auto& dir : dirs) {
    const fs::path file = dir / "runs.csv";
    if (!fs::exists(file)) throw ConfigError("no runs.csv in " + dir.string());
    const auto rows = read_runs_csv(file);
    if (rows.empty()) throw ConfigError("runs.csv in " + dir.string() + " has no runs");
    for (const auto& r : rows) {
      const auto key = std::make_pair(r.problem, r.algorithm);
      if (!acc.count(key)) order.push_back(key);
      Acc& a = acc[key];
      a.vus.push_back(r.vus);
      a.gini.push_back(r.gini);
      a.hypervolume.push_back(r.hypervolume);
      a.wall_ms.push_back(static_cast<double>(r.wall_ms));
    }
  }
  std::vector<ReportRow> out;
  for (const auto& key : order) {
    const Acc& a = acc[key];
    out.push_back({key.first, key.second, a.vus.size(), summarize(a.vus), summarize(a.gini),
                   summarize(a.hypervolume), summarize(a.wall_ms)});
  }
  return out;
}

std::string report_csv(std::span<const ReportRow> rows) {
  std::string s =
      "problem,algo,runs,vus_mean,vus_std,gini_mean,gini_std,hypervolume_mean,hypervolume_std,wall_ms_mean,"
      "wall_ms_std\n";
  for (const auto& r : rows) {
    s += r.problem + ',' + r.algorithm + ',' + std::to_string(r.runs);
    for (const Summary* m : {&r.vus, &r.gini, &r.hypervolume, &r.wall_ms}) {
      s += ',' + num(m->mean) + ',' + num(m->stddev);
    }
    s += '\n';
  }
  return s;
}

std::string report_text(std::span<const ReportRow> rows) {
  std::string s;
  char buf[160];
  std::snprintf(buf, sizeof buf, "%-14s %-6s %4s  %-20s %-20s %-20s %-20s\n", "problem", "algo", "runs", "vus",
                "gini", "hypervolume", "wall_ms");
  s += buf;
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%-14s %-6s %4zu", r.problem.c_str(), r.algorithm.c_str(), r.runs);
    s += buf;
    for (const Summary* m : {&r.vus, &r.gini, &r.hypervolume, &r.wall_ms}) {
      std::snprintf(buf, sizeof buf, "  %9.3e(%8.1e)", m->mean, m->stddev);
      s += buf;
    }
    s += '\n';
  }
  return s;
}

}  // namespace chemoa
