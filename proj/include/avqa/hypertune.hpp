#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <string>
#include <variant>
#include <vector>

namespace avqa::hypertune {

using Value = std::variant<double, std::int64_t, std::string>;
using ParamConfig = std::map<std::string, Value>;

struct ContinuousRange {
  double lo = 0.0;
  double hi = 1.0;
};
struct IntegerRange {
  std::int64_t lo = 0;
  std::int64_t hi = 1;
};
struct Categorical {
  std::vector<std::string> options;
};

struct ParamDomain {
  std::string name;
  std::variant<ContinuousRange, IntegerRange, Categorical> kind;

  static ParamDomain continuous(std::string name, double lo, double hi);
  static ParamDomain integer(std::string name, std::int64_t lo, std::int64_t hi);
  static ParamDomain categorical(std::string name, std::vector<std::string> options);

  void validate() const;
  [[nodiscard]] bool contains(const Value& v) const;
};

struct TrialRecord {
  ParamConfig config;
  double loss = std::numeric_limits<double>::infinity();
  double wall_time = 0.0;
  std::size_t eval_count = 0;
};

struct TrialOutcome {
  double loss = 0.0;
  std::size_t eval_count = 0;
};

/// May throw; a throwing trial is recorded with infinite loss.
using TrialObjective = std::function<TrialOutcome(const ParamConfig&)>;

enum class Strategy { TPE, Random };

struct SearchOptions {
  std::size_t n_trials = 50;
  double time_limit = std::numeric_limits<double>::infinity();  // seconds
  std::uint64_t seed = 0;
  Strategy strategy = Strategy::TPE;
  double gamma = 0.25;
  std::size_t n_candidates = 64;
};

struct SearchResult {
  ParamConfig best;
  double best_loss = std::numeric_limits<double>::infinity();
  std::vector<TrialRecord> trials;
};

/// Relative width within which two losses count as equal.
inline constexpr double kLossTieTolerance = 1e-6;

/// Lower loss wins; losses equal within the tie tolerance go to fewer evaluations.
bool improves(const TrialRecord& candidate, const TrialRecord& incumbent);

/// Number of leading trials drawn uniformly at random: max(5, n_trials / 5).
std::size_t startup_trials(std::size_t n_trials);

/// Runs trials sequentially until n_trials or the time limit. At least one trial runs.
SearchResult search(const std::vector<ParamDomain>& space, const TrialObjective& objective,
                    const SearchOptions& opts);

double as_double(const Value& v);
std::int64_t as_int(const Value& v);
const std::string& as_string(const Value& v);
std::string to_display(const Value& v);

}  // namespace avqa::hypertune
