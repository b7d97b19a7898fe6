#pragma once

#include <chrono>
#include <optional>
#include <string>

#include "avqa/circuit.hpp"
#include "avqa/param_opt.hpp"
#include "avqa/problems.hpp"

namespace avqa {

/// Everything an algorithm needs about one instance, computed once.
struct ProblemContext {
  IsingModel model;
  DiagonalEnergy energy;
  GroundTruth truth;

  static ProblemContext from_model(IsingModel m);
};

struct AlgorithmResult {
  std::string algorithm;
  std::string instance_id;
  std::optional<double> approximation_ratio;
  /// Offset-included expectation of the best circuit.
  double expectation = 0.0;
  /// The algorithm's own loss for the best circuit (equals expectation except for EVQE).
  double loss = 0.0;
  /// expectation - min_energy; meaningful when the ratio is undefined.
  double absolute_gap = 0.0;
  double min_energy = 0.0;
  std::size_t gates = 0;
  std::size_t cnot = 0;
  std::size_t depth = 0;
  std::size_t evals_used = 0;
  std::size_t structures = 0;
  std::size_t max_structure_evals = 0;
  /// Largest circuit explored during the search.
  std::size_t max_gates_explored = 0;
  double wall_time = 0.0;
  std::string optimizer{kOptimizerName};
  Circuit best_circuit{1};
  std::optional<std::string> error;
};

/// Fills the derived fields of a result from the best circuit and the run's ledger.
AlgorithmResult make_result(std::string algorithm, const ProblemContext& ctx, Circuit best,
                            double expectation, double loss, const BudgetLedger& ledger,
                            std::size_t max_gates_explored);

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  [[nodiscard]] double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace avqa
