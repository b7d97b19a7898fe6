#pragma once

#include <cstdint>
#include <limits>
#include <string_view>
#include <vector>

#include "avqa/hypertune.hpp"
#include "avqa/param_opt.hpp"
#include "avqa/result.hpp"

namespace avqa {

enum class Algorithm { EVQE, VAns, RAVQE, QAOA };

std::string_view to_string(Algorithm a);
/// Accepts "evqe", "vans", "ravqe" (or "ra_vqe"), "qaoa".
Algorithm algorithm_from_string(std::string_view s);
const std::vector<Algorithm>& all_algorithms();

/// Hyperparameter ranges searched by the tuner.
std::vector<hypertune::ParamDomain> search_space(Algorithm a);

/// Tuned values for N = 4, 8, 12, 15; other sizes use the nearest tabulated N.
hypertune::ParamConfig default_hyperparameters(Algorithm a, int n);

/// Runs one algorithm with a fresh interpretation of `params`; keys missing
/// from `params` keep their built-in defaults, unknown keys are rejected.
AlgorithmResult run_algorithm(Algorithm a, const ProblemContext& ctx,
                              const hypertune::ParamConfig& params, std::uint64_t seed,
                              BudgetLedger& ledger);

struct TuneOptions {
  int n = 4;
  std::size_t n_trials = 50;
  double time_limit = std::numeric_limits<double>::infinity();
  std::uint64_t seed = 0;
  hypertune::Strategy strategy = hypertune::Strategy::TPE;
  std::size_t global_cap = 10000;
  std::size_t per_structure_cap = 50;
};

/// MaxCut on an Erdos-Renyi graph (p = 0.7) with a seed reserved for tuning.
IsingModel tuning_instance(int n, std::uint64_t seed);

/// Searches the algorithm's space, scoring each configuration by the
/// algorithm's own loss on the tuning instance.
hypertune::SearchResult tune(Algorithm a, const TuneOptions& opts);

}  // namespace avqa
