#include "avqa/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <tuple>

#include <fmt/format.h>

#include "avqa/rng.hpp"

namespace avqa::bench {

using io::json;
using hypertune::ParamConfig;

void ExperimentConfig::validate() const {
  if (kinds.empty()) throw std::invalid_argument("config: no problem kinds");
  if (sizes.empty()) throw std::invalid_argument("config: no sizes");
  if (algorithms.empty()) throw std::invalid_argument("config: no algorithms");
  if (instances < 1) throw std::invalid_argument("config: instances must be >= 1");
  if (workers < 1) throw std::invalid_argument("config: workers must be >= 1");
  if (global_cap < 1 || per_structure_cap < 1) throw std::invalid_argument("config: caps must be >= 1");
  for (int n : sizes) {
    if (n < 2) throw std::invalid_argument("config: sizes must be >= 2");
  }
}

ParamConfig ExperimentConfig::resolve(Algorithm a, int n) const {
  const auto it = hyperparameters.find(a);
  if (it != hyperparameters.end()) {
    if (const auto exact = it->second.find(std::to_string(n)); exact != it->second.end()) {
      return exact->second;
    }
    if (const auto any = it->second.find("*"); any != it->second.end()) return any->second;
  }
  return default_hyperparameters(a, n);
}

namespace {

ParamConfig load_params(const json& entry, const std::filesystem::path& base_dir) {
  if (entry.is_string()) {
    const json file = io::read_json(base_dir / entry.get<std::string>());
    return io::param_config_from_json(file.contains("config") ? file["config"] : file);
  }
  return io::param_config_from_json(entry);
}

}  // namespace

ExperimentConfig config_from_json(const json& j, const std::filesystem::path& base_dir) {
  ExperimentConfig cfg;
  if (j.contains("kinds")) {
    cfg.kinds.clear();
    for (const json& k : j["kinds"]) cfg.kinds.push_back(problem_kind_from_string(k.get<std::string>()));
  }
  if (j.contains("sizes")) cfg.sizes = j["sizes"].get<std::vector<int>>();
  cfg.instances = j.value("instances", cfg.instances);
  cfg.master_seed = j.value("master_seed", cfg.master_seed);
  if (j.contains("algorithms")) {
    cfg.algorithms.clear();
    for (const json& a : j["algorithms"]) cfg.algorithms.push_back(algorithm_from_string(a.get<std::string>()));
  }
  cfg.global_cap = j.value("global_cap", cfg.global_cap);
  cfg.per_structure_cap = j.value("per_structure_cap", cfg.per_structure_cap);
  cfg.workers = j.value("workers", cfg.workers);
  cfg.output_dir = j.value("output_dir", cfg.output_dir);
  if (j.contains("hyperparameters")) {
    for (const auto& [name, by_size] : j["hyperparameters"].items()) {
      auto& slot = cfg.hyperparameters[algorithm_from_string(name)];
      if (by_size.is_string()) {
        slot["*"] = load_params(by_size, base_dir);
        continue;
      }
      for (const auto& [size_key, entry] : by_size.items()) slot[size_key] = load_params(entry, base_dir);
    }
  }
  cfg.validate();
  return cfg;
}

json to_json(const ExperimentConfig& cfg) {
  json kinds = json::array();
  for (ProblemKind k : cfg.kinds) kinds.push_back(std::string(to_string(k)));
  json algs = json::array();
  for (Algorithm a : cfg.algorithms) algs.push_back(std::string(to_string(a)));
  json hp = json::object();
  for (const auto& [a, by_size] : cfg.hyperparameters) {
    for (const auto& [key, params] : by_size) hp[std::string(to_string(a))][key] = io::to_json(params);
  }
  return {{"kinds", kinds},
          {"sizes", cfg.sizes},
          {"instances", cfg.instances},
          {"master_seed", cfg.master_seed},
          {"algorithms", algs},
          {"global_cap", cfg.global_cap},
          {"per_structure_cap", cfg.per_structure_cap},
          {"workers", cfg.workers},
          {"output_dir", cfg.output_dir},
          {"hyperparameters", hp}};
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  return config_from_json(io::read_json(path), path.parent_path().empty() ? "." : path.parent_path());
}

void apply_env_overrides(ExperimentConfig& cfg) {
  const char* raw = std::getenv(kMasterSeedEnv);
  if (raw == nullptr || *raw == '\0') return;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(raw, &end, 10);
  if (end == raw || *end != '\0') {
    throw std::invalid_argument(std::string(kMasterSeedEnv) + " must be an unsigned integer");
  }
  cfg.master_seed = v;
}

std::uint64_t instance_seed(ProblemKind kind, int n, std::size_t index, std::uint64_t master_seed) {
  std::uint64_t h = hash_label(to_string(kind));
  h = hash_combine(h, static_cast<std::uint64_t>(n));
  h = hash_combine(h, static_cast<std::uint64_t>(index));
  return hash_combine(h, master_seed);
}

std::uint64_t algorithm_seed(Algorithm a, std::uint64_t inst_seed) {
  return hash_combine(hash_label(to_string(a)), inst_seed);
}

std::string instance_id(ProblemKind kind, int n, std::size_t index) {
  return fmt::format("{}-n{}-i{}", to_string(kind), n, index);
}

std::size_t MatrixOutput::failures() const {
  return static_cast<std::size_t>(std::count_if(runs.begin(), runs.end(),
                                                [](const RunRecord& r) { return r.failed(); }));
}

namespace {

struct Cell {
  ProblemKind kind;
  int n;
  std::size_t index;
  std::uint64_t seed;
  std::optional<ProblemContext> ctx;
  std::string error;
};

template <typename Fn>
void parallel_for(std::size_t count, std::size_t workers, Fn&& fn) {
  workers = std::max<std::size_t>(1, std::min(workers, count));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) fn(i);
    });
  }
  for (std::thread& t : pool) t.join();
}

}  // namespace

MatrixOutput run_matrix(const ExperimentConfig& cfg, const ProgressFn& progress) {
  cfg.validate();

  std::vector<ProblemKind> kinds = cfg.kinds;
  std::sort(kinds.begin(), kinds.end());
  kinds.erase(std::unique(kinds.begin(), kinds.end()), kinds.end());
  std::vector<int> sizes = cfg.sizes;
  std::sort(sizes.begin(), sizes.end());
  sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());
  std::vector<Algorithm> algs = cfg.algorithms;
  std::sort(algs.begin(), algs.end());
  algs.erase(std::unique(algs.begin(), algs.end()), algs.end());

  std::vector<Cell> cells;
  for (ProblemKind k : kinds) {
    for (int n : sizes) {
      for (std::size_t i = 0; i < cfg.instances; ++i) {
        cells.push_back({k, n, i, instance_seed(k, n, i, cfg.master_seed), std::nullopt, {}});
      }
    }
  }
  std::vector<std::optional<QuboInstance>> qubos(cells.size());
  parallel_for(cells.size(), cfg.workers, [&](std::size_t c) {
    Cell& cell = cells[c];
    try {
      ProblemSpec spec;
      spec.kind = cell.kind;
      spec.n = cell.n;
      spec.seed = cell.seed;
      qubos[c] = generate(spec);
      cell.ctx = ProblemContext::from_model(qubo_to_ising(*qubos[c]));
    } catch (const std::exception& e) {
      cell.error = e.what();
    }
  });

  MatrixOutput out;
  out.runs.resize(cells.size() * algs.size());
  std::mutex progress_mutex;
  parallel_for(out.runs.size(), cfg.workers, [&](std::size_t job) {
    const Cell& cell = cells[job / algs.size()];
    const Algorithm a = algs[job % algs.size()];
    RunRecord& rec = out.runs[job];
    rec.kind = cell.kind;
    rec.n = cell.n;
    rec.instance = cell.index;
    rec.algorithm = a;
    const std::string id = instance_id(cell.kind, cell.n, cell.index);
    if (!cell.ctx) {
      rec.result.error = cell.error;
    } else {
      Stopwatch clock;
      try {
        BudgetLedger ledger(cfg.global_cap, cfg.per_structure_cap);
        rec.result = run_algorithm(a, *cell.ctx, cfg.resolve(a, cell.n), algorithm_seed(a, cell.seed), ledger);
      } catch (const std::exception& e) {
        rec.result = AlgorithmResult{};
        rec.result.error = e.what();
        rec.result.wall_time = clock.seconds();
      }
    }
    rec.result.algorithm = std::string(to_string(a));
    rec.result.instance_id = id;
    if (progress) {
      std::lock_guard lock(progress_mutex);
      progress(rec);
    }
  });

  for (std::size_t c = 0; c < cells.size(); ++c) {
    if (cells[c].ctx) {
      out.instances.push_back({instance_id(cells[c].kind, cells[c].n, cells[c].index), *qubos[c],
                               cells[c].ctx->truth});
    }
  }
  return out;
}

Stat describe(std::vector<double> values) {
  Stat s;
  s.count = values.size();
  if (values.empty()) return s;
  // Fixed summation order makes the result independent of input order.
  std::sort(values.begin(), values.end());
  s.mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.std = std::sqrt(ss / static_cast<double>(values.size() - 1));
  }
  return s;
}

std::vector<SummaryRow> summarize(const std::vector<RunRecord>& runs) {
  std::map<std::tuple<ProblemKind, int, std::string>, std::vector<const RunRecord*>> groups;
  for (const RunRecord& r : runs) groups[{r.kind, r.n, r.result.algorithm}].push_back(&r);

  std::vector<SummaryRow> rows;
  for (const auto& [key, members] : groups) {
    SummaryRow row;
    std::tie(row.kind, row.n, row.algorithm) = key;
    row.runs = members.size();
    std::vector<double> ratio, expectation, time, gates, cnot, evals;
    for (const RunRecord* r : members) {
      if (r->failed()) {
        ++row.failures;
        continue;
      }
      if (r->result.approximation_ratio) {
        ratio.push_back(*r->result.approximation_ratio);
      } else {
        ++row.undefined_ratio;
      }
      expectation.push_back(r->result.expectation);
      time.push_back(r->result.wall_time);
      gates.push_back(static_cast<double>(r->result.gates));
      cnot.push_back(static_cast<double>(r->result.cnot));
      evals.push_back(static_cast<double>(r->result.evals_used));
    }
    row.ratio = describe(ratio);
    row.expectation = describe(expectation);
    row.time = describe(time);
    row.gates = describe(gates);
    row.cnot = describe(cnot);
    row.evals = describe(evals);
    rows.push_back(row);
  }
  return rows;
}

std::string results_jsonl(const std::vector<RunRecord>& runs) {
  std::string out;
  for (const RunRecord& r : runs) {
    json line = io::to_json(r.result);
    line["kind"] = std::string(to_string(r.kind));
    line["n"] = r.n;
    line["instance"] = r.instance;
    out += line.dump();
    out += '\n';
  }
  return out;
}

std::string timings_csv(const std::vector<RunRecord>& runs) {
  std::string out = "instance_id,algorithm,wall_time\n";
  for (const RunRecord& r : runs) {
    out += fmt::format("{},{},{}\n", r.result.instance_id, r.result.algorithm, r.result.wall_time);
  }
  return out;
}

std::string summary_csv(const std::vector<SummaryRow>& rows) {
  std::string out =
      "kind,n,algorithm,runs,failures,undefined_ratio,ratio_mean,ratio_std,expectation_mean,"
      "expectation_std,time_mean,time_std,gates,gates_std,cnot,cnot_std,evals_mean,evals_std\n";
  for (const SummaryRow& r : rows) {
    out += fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n", to_string(r.kind), r.n,
                       r.algorithm, r.runs, r.failures, r.undefined_ratio, r.ratio.mean, r.ratio.std,
                       r.expectation.mean, r.expectation.std, r.time.mean, r.time.std,
                       std::llround(r.gates.mean), r.gates.std, std::llround(r.cnot.mean), r.cnot.std,
                       r.evals.mean, r.evals.std);
  }
  return out;
}

std::string summary_markdown(const std::vector<SummaryRow>& rows) {
  std::string out =
      "| Problem | N | Algorithm | Approx. Ratio | Expectation | Gates | CNOT | Evals | Time (s) |\n"
      "|---|---|---|---|---|---|---|---|---|\n";
  std::size_t undefined = 0;
  std::size_t failures = 0;
  for (const SummaryRow& r : rows) {
    const std::string ratio = r.ratio.count == 0
                                  ? std::string("n/a")
                                  : fmt::format("{:.2f} ± {:.2f}", r.ratio.mean, r.ratio.std);
    const std::string mark = r.undefined_ratio > 0 || r.failures > 0 ? "*" : "";
    out += fmt::format("| {} | {} | {} | {}{} | {:.2f} ± {:.2f} | {} | {} | {:.0f} | {:.2f} ± {:.2f} |\n",
                       to_string(r.kind), r.n, r.algorithm, ratio, mark, r.expectation.mean,
                       r.expectation.std, std::llround(r.gates.mean), std::llround(r.cnot.mean),
                       r.evals.mean, r.time.mean, r.time.std);
    undefined += r.undefined_ratio;
    failures += r.failures;
  }
  if (undefined > 0 || failures > 0) {
    out += fmt::format("\n\\* {} run(s) with undefined ratio (zero ground energy) and {} failed run(s) "
                       "are excluded from the ratio column.\n",
                       undefined, failures);
  }
  return out;
}

void write_outputs(const std::filesystem::path& dir, const MatrixOutput& out) {
  std::filesystem::create_directories(dir / "instances");
  io::write_text(dir / "results.jsonl", results_jsonl(out.runs));
  io::write_text(dir / "timings.csv", timings_csv(out.runs));
  const auto rows = summarize(out.runs);
  io::write_text(dir / "summary.csv", summary_csv(rows));
  io::write_text(dir / "summary.md", summary_markdown(rows));
  for (const InstanceArtifact& a : out.instances) {
    io::write_text(dir / "instances" / (a.id + ".json"), io::to_json(a.instance).dump(1) + "\n");
    io::write_text(dir / "instances" / (a.id + ".truth.json"),
                   io::to_json(a.truth, a.instance.n).dump(1) + "\n");
  }
}

std::vector<RunRecord> read_results(const std::filesystem::path& dir) {
  std::ifstream in(dir / "results.jsonl");
  if (!in) throw std::runtime_error("cannot open " + (dir / "results.jsonl").string());

  std::map<std::pair<std::string, std::string>, double> times;
  if (std::ifstream t(dir / "timings.csv"); t) {
    std::string line;
    std::getline(t, line);  // header
    while (std::getline(t, line)) {
      std::istringstream ls(line);
      std::string id, alg, secs;
      if (std::getline(ls, id, ',') && std::getline(ls, alg, ',') && std::getline(ls, secs)) {
        times[{id, alg}] = std::stod(secs);
      }
    }
  }

  std::vector<RunRecord> runs;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const json j = json::parse(line);
    RunRecord r;
    r.result = io::result_from_json(j);
    r.kind = problem_kind_from_string(j.at("kind").get<std::string>());
    r.n = j.at("n").get<int>();
    r.instance = j.at("instance").get<std::size_t>();
    r.algorithm = algorithm_from_string(r.result.algorithm);
    if (const auto it = times.find({r.result.instance_id, r.result.algorithm}); it != times.end()) {
      r.result.wall_time = it->second;
    }
    runs.push_back(std::move(r));
  }
  return runs;
}

}  // namespace avqa::bench
