#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "avqa/algorithms.hpp"
#include "avqa/io.hpp"
#include "avqa/problems.hpp"
#include "avqa/result.hpp"

namespace avqa::bench {

inline constexpr const char* kMasterSeedEnv = "AVQA_MASTER_SEED";

struct ExperimentConfig {
  std::vector<ProblemKind> kinds{ProblemKind::MaxCutER};
  std::vector<int> sizes{4};
  std::size_t instances = 10;
  std::uint64_t master_seed = 0;
  std::vector<Algorithm> algorithms = all_algorithms();
  std::size_t global_cap = 10000;
  std::size_t per_structure_cap = 50;
  std::size_t workers = 1;
  std::string output_dir = "results";
  /// Per algorithm, keyed by size ("4") or "*" for any size.
  std::map<Algorithm, std::map<std::string, hypertune::ParamConfig>> hyperparameters;

  void validate() const;
  /// Exact size entry, then "*", then the built-in tuned defaults.
  [[nodiscard]] hypertune::ParamConfig resolve(Algorithm a, int n) const;
};

/// Hyperparameter entries may be inline objects or paths (relative to base_dir)
/// to a tuner output file.
ExperimentConfig config_from_json(const io::json& j, const std::filesystem::path& base_dir = ".");
io::json to_json(const ExperimentConfig& cfg);
ExperimentConfig load_config(const std::filesystem::path& path);

/// Replaces master_seed when the environment variable is set; throws on a malformed value.
void apply_env_overrides(ExperimentConfig& cfg);

std::uint64_t instance_seed(ProblemKind kind, int n, std::size_t index, std::uint64_t master_seed);
std::uint64_t algorithm_seed(Algorithm a, std::uint64_t instance_seed);
std::string instance_id(ProblemKind kind, int n, std::size_t index);

struct RunRecord {
  ProblemKind kind = ProblemKind::MaxCutER;
  int n = 0;
  std::size_t instance = 0;
  Algorithm algorithm = Algorithm::QAOA;
  AlgorithmResult result;

  [[nodiscard]] bool failed() const { return result.error.has_value(); }
};

struct InstanceArtifact {
  std::string id;
  QuboInstance instance;
  GroundTruth truth;
};

struct MatrixOutput {
  std::vector<RunRecord> runs;
  std::vector<InstanceArtifact> instances;
  [[nodiscard]] std::size_t failures() const;
};

using ProgressFn = std::function<void(const RunRecord&)>;

/// Runs every (kind, n, instance, algorithm) cell with a fresh ledger, in
/// parallel up to cfg.workers. Output is sorted by (kind, n, instance, algorithm).
MatrixOutput run_matrix(const ExperimentConfig& cfg, const ProgressFn& progress = {});

struct Stat {
  double mean = 0.0;
  double std = 0.0;  // sample standard deviation, 0 for a single value
  std::size_t count = 0;
};
Stat describe(std::vector<double> values);

struct SummaryRow {
  ProblemKind kind = ProblemKind::MaxCutER;
  int n = 0;
  std::string algorithm;
  std::size_t runs = 0;
  std::size_t failures = 0;
  std::size_t undefined_ratio = 0;
  Stat ratio;
  Stat expectation;
  Stat time;
  Stat gates;
  Stat cnot;
  Stat evals;
};

/// Groups by (kind, n, algorithm); independent of input order.
std::vector<SummaryRow> summarize(const std::vector<RunRecord>& runs);

std::string results_jsonl(const std::vector<RunRecord>& runs);
std::string timings_csv(const std::vector<RunRecord>& runs);
std::string summary_csv(const std::vector<SummaryRow>& rows);
std::string summary_markdown(const std::vector<SummaryRow>& rows);

/// results.jsonl, timings.csv, summary.csv, summary.md and instances/.
void write_outputs(const std::filesystem::path& dir, const MatrixOutput& out);

/// Reads results.jsonl, joining wall times from timings.csv when present.
std::vector<RunRecord> read_results(const std::filesystem::path& dir);

}  // namespace avqa::bench
