#include "avqa/algorithms.hpp"

#include <array>
#include <cstdlib>
#include <set>
#include <stdexcept>
#include <string>

#include "avqa/evqe.hpp"
#include "avqa/problems.hpp"
#include "avqa/qaoa.hpp"
#include "avqa/ra_vqe.hpp"
#include "avqa/rng.hpp"
#include "avqa/vans.hpp"

namespace avqa {

using hypertune::ParamConfig;
using hypertune::ParamDomain;
using hypertune::Value;

std::string_view to_string(Algorithm a) {
  switch (a) {
    case Algorithm::EVQE: return "evqe";
    case Algorithm::VAns: return "vans";
    case Algorithm::RAVQE: return "ravqe";
    case Algorithm::QAOA: return "qaoa";
  }
  return "?";
}

Algorithm algorithm_from_string(std::string_view s) {
  if (s == "evqe") return Algorithm::EVQE;
  if (s == "vans") return Algorithm::VAns;
  if (s == "ravqe" || s == "ra_vqe" || s == "ra-vqe") return Algorithm::RAVQE;
  if (s == "qaoa") return Algorithm::QAOA;
  throw std::invalid_argument("unknown algorithm '" + std::string(s) + "'");
}

const std::vector<Algorithm>& all_algorithms() {
  static const std::vector<Algorithm> all{Algorithm::EVQE, Algorithm::VAns, Algorithm::RAVQE,
                                          Algorithm::QAOA};
  return all;
}

std::vector<ParamDomain> search_space(Algorithm a) {
  switch (a) {
    case Algorithm::EVQE:
      return {ParamDomain::integer("population_size", 5, 20),
              ParamDomain::integer("dist_threshold", 1, 10),
              ParamDomain::continuous("prob_insertion", 0.0, 1.0),
              ParamDomain::continuous("prob_removal", 0.0, 1.0),
              ParamDomain::continuous("a", 0.0, 0.5),
              ParamDomain::continuous("b", 0.0, 0.5)};
    case Algorithm::VAns:
      return {ParamDomain::categorical("initial_layer", {"SA", "HEA"}),
              ParamDomain::continuous("scale", 0.0, 1.5),
              ParamDomain::continuous("temperature", 1.0, 20.0),
              ParamDomain::continuous("accept_wall", 30.0, 70.0),
              ParamDomain::continuous("accept_perc", 0.0, 1.0),
              ParamDomain::continuous("min_randomness", 30.0, 50.0),
              ParamDomain::continuous("max_randomness", 50.0, 70.0),
              ParamDomain::integer("decrease_to", 1, 10),
              ParamDomain::continuous("factor_accept_perc", 0.8, 0.99)};
    case Algorithm::RAVQE:
      return {ParamDomain::categorical("initial_layer", {"SA", "HEA"})};
    case Algorithm::QAOA:
      return {ParamDomain::integer("p", 1, 10)};
  }
  return {};
}

namespace {

constexpr std::array<int, 4> kTabulatedSizes{4, 8, 12, 15};

std::size_t column_for(int n) {
  std::size_t best = 0;
  for (std::size_t k = 1; k < kTabulatedSizes.size(); ++k) {
    if (std::abs(kTabulatedSizes[k] - n) < std::abs(kTabulatedSizes[best] - n)) best = k;
  }
  return best;
}

class Reader {
 public:
  Reader(const ParamConfig& p, std::string_view algorithm) : params_(p), algorithm_(algorithm) {}

  template <typename T>
  void read(const char* key, T& out) {
    seen_.insert(key);
    const auto it = params_.find(key);
    if (it == params_.end()) return;
    if constexpr (std::is_same_v<T, double>) {
      out = hypertune::as_double(it->second);
    } else if constexpr (std::is_same_v<T, int>) {
      out = static_cast<int>(hypertune::as_int(it->second));
    } else {
      out = initial_layer_from_string(hypertune::as_string(it->second));
    }
  }

  void finish() const {
    for (const auto& [key, value] : params_) {
      if (!seen_.contains(key)) {
        throw std::invalid_argument("unknown hyperparameter '" + key + "' for " +
                                    std::string(algorithm_));
      }
    }
  }

 private:
  const ParamConfig& params_;
  std::string_view algorithm_;
  std::set<std::string> seen_;
};

}  // namespace

ParamConfig default_hyperparameters(Algorithm a, int n) {
  const std::size_t c = column_for(n);
  switch (a) {
    case Algorithm::EVQE: {
      constexpr std::array<std::int64_t, 4> pop{20, 19, 20, 14};
      constexpr std::array<std::int64_t, 4> dist{1, 7, 4, 3};
      constexpr std::array<double, 4> ins{0.282, 0.451, 0.164, 1.000};
      constexpr std::array<double, 4> rem{1.000, 0.000, 0.287, 0.178};
      constexpr std::array<double, 4> b{0.0, 0.0, 0.098, 0.0};
      return {{"population_size", pop[c]}, {"dist_threshold", dist[c]},
              {"prob_insertion", ins[c]},  {"prob_removal", rem[c]},
              {"a", 0.0},                  {"b", b[c]}};
    }
    case Algorithm::VAns: {
      constexpr std::array<double, 4> scale{1.137, 0.459, 0.489, 0.000};
      constexpr std::array<double, 4> temp{11.477, 8.027, 5.737, 20.000};
      constexpr std::array<double, 4> wall{58.522, 55.661, 34.411, 30.000};
      constexpr std::array<double, 4> perc{0.042, 0.323, 0.096, 0.000};
      constexpr std::array<double, 4> min_r{49.968, 39.338, 38.776, 50.000};
      constexpr std::array<double, 4> max_r{67.402, 51.267, 51.222, 70.000};
      constexpr std::array<std::int64_t, 4> dec{7, 9, 1, 10};
      constexpr std::array<double, 4> factor{0.820, 0.810, 0.973, 0.800};
      return {{"initial_layer", std::string("SA")}, {"scale", scale[c]},
              {"temperature", temp[c]},             {"accept_wall", wall[c]},
              {"accept_perc", perc[c]},             {"min_randomness", min_r[c]},
              {"max_randomness", max_r[c]},         {"decrease_to", dec[c]},
              {"factor_accept_perc", factor[c]}};
    }
    case Algorithm::RAVQE:
      return {{"initial_layer", std::string("SA")}};
    case Algorithm::QAOA: {
      constexpr std::array<std::int64_t, 4> p{1, 2, 3, 2};
      return {{"p", p[c]}};
    }
  }
  return {};
}

AlgorithmResult run_algorithm(Algorithm a, const ProblemContext& ctx, const ParamConfig& params,
                              std::uint64_t seed, BudgetLedger& ledger) {
  Reader r(params, to_string(a));
  switch (a) {
    case Algorithm::EVQE: {
      evqe::Config cfg;
      r.read("population_size", cfg.population_size);
      r.read("dist_threshold", cfg.dist_threshold);
      r.read("prob_insertion", cfg.prob_insertion);
      r.read("prob_removal", cfg.prob_removal);
      r.read("a", cfg.a);
      r.read("b", cfg.b);
      r.finish();
      cfg.seed = seed;
      return evqe::evolve(ctx, cfg, ledger);
    }
    case Algorithm::VAns: {
      vans::Config cfg;
      r.read("initial_layer", cfg.initial_layer);
      r.read("scale", cfg.scale);
      r.read("temperature", cfg.temperature);
      r.read("accept_wall", cfg.accept_wall);
      r.read("accept_perc", cfg.accept_perc);
      r.read("min_randomness", cfg.min_randomness);
      r.read("max_randomness", cfg.max_randomness);
      r.read("decrease_to", cfg.decrease_to);
      r.read("factor_accept_perc", cfg.factor_accept_perc);
      r.read("n_iterations", cfg.n_iterations);
      r.finish();
      cfg.seed = seed;
      return vans::run(ctx, cfg, ledger);
    }
    case Algorithm::RAVQE: {
      ra_vqe::Config cfg;
      r.read("initial_layer", cfg.initial_layer);
      r.finish();
      cfg.seed = seed;
      return ra_vqe::run(ctx, cfg, ledger);
    }
    case Algorithm::QAOA: {
      qaoa::Config cfg;
      r.read("p", cfg.p);
      r.finish();
      cfg.init_seed = seed;
      return qaoa::run(ctx, cfg, ledger);
    }
  }
  throw std::logic_error("unreachable");
}

IsingModel tuning_instance(int n, std::uint64_t seed) {
  ProblemSpec spec;
  spec.kind = ProblemKind::MaxCutER;
  spec.n = n;
  spec.seed = hash_combine(hash_combine(hash_label("tuning"), static_cast<std::uint64_t>(n)), seed);
  return qubo_to_ising(generate(spec));
}

hypertune::SearchResult tune(Algorithm a, const TuneOptions& opts) {
  const ProblemContext ctx = ProblemContext::from_model(tuning_instance(opts.n, opts.seed));
  const std::uint64_t run_seed = hash_combine(hash_label(to_string(a)), opts.seed);
  auto objective = [&](const ParamConfig& p) {
    BudgetLedger ledger(opts.global_cap, opts.per_structure_cap);
    const AlgorithmResult r = run_algorithm(a, ctx, p, run_seed, ledger);
    return hypertune::TrialOutcome{r.loss, r.evals_used};
  };
  hypertune::SearchOptions so;
  so.n_trials = opts.n_trials;
  so.time_limit = opts.time_limit;
  so.seed = opts.seed;
  so.strategy = opts.strategy;
  return hypertune::search(search_space(a), objective, so);
}

}  // namespace avqa
