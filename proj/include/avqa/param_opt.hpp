#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "avqa/circuit.hpp"
#include "avqa/cobyla.hpp"
#include "avqa/statevector.hpp"

namespace avqa {

/**
 * Counts circuit-expectation evaluations for one algorithm run.
 *
 * The global cap is hard: charge() refuses once used() reaches it. The
 * per-structure cap is the default evaluation allowance handed to each
 * parameter optimization; the ledger records the largest allowance actually
 * consumed so the protocol can be audited afterwards.
 */
class BudgetLedger {
 public:
  static constexpr std::size_t kDefaultGlobalCap = 10'000;
  static constexpr std::size_t kDefaultStructureCap = 50;

  explicit BudgetLedger(std::size_t global_cap = kDefaultGlobalCap,
                        std::size_t per_structure_cap = kDefaultStructureCap);

  [[nodiscard]] std::size_t global_cap() const { return global_cap_; }
  [[nodiscard]] std::size_t per_structure_cap() const { return per_structure_cap_; }
  [[nodiscard]] std::size_t used() const { return used_; }
  [[nodiscard]] std::size_t remaining() const { return global_cap_ - used_; }
  [[nodiscard]] bool exhausted() const { return used_ >= global_cap_; }

  /// Counts one evaluation; false (and no increment) once the cap is reached.
  bool charge();

  /// Records one completed parameter optimization of evals evaluations.
  void record_structure(std::size_t evals);
  [[nodiscard]] std::size_t structures() const { return structures_; }
  [[nodiscard]] std::size_t max_structure_evals() const { return max_structure_evals_; }

 private:
  std::size_t global_cap_;
  std::size_t per_structure_cap_;
  std::size_t used_ = 0;
  std::size_t structures_ = 0;
  std::size_t max_structure_evals_ = 0;
};

enum class Termination { Converged, StructureBudget, GlobalBudget };

std::string_view to_string(Termination t);

struct OptResult {
  std::vector<double> best_params;
  /// +inf when the ledger refused even the first evaluation (evals_used == 0).
  double best_value = 0.0;
  std::size_t evals_used = 0;
  Termination terminated_by = Termination::Converged;
};

using Objective = std::function<double(std::span<const double>)>;

/// Name recorded in result metadata for the optimizer behind minimize().
inline constexpr std::string_view kOptimizerName = "COBYLA";

/// COBYLA on objective, charging every call to ledger, at most max_evals calls.
OptResult minimize(const Objective& objective, std::vector<double> x0, BudgetLedger& ledger,
                   std::size_t max_evals, const CobylaOptions& options = {});

/// Minimizes the expectation of c over active_slots (default: all), the other
/// angles frozen at c's current values.
OptResult optimize_circuit(const Circuit& c, const DiagonalEnergy& energy, BudgetLedger& ledger,
                           std::size_t max_evals,
                           std::optional<std::vector<std::size_t>> active_slots = std::nullopt);

/// One ledger-charged expectation of c at its own parameters; nullopt once the budget is spent.
std::optional<double> charged_expectation(const Circuit& c, const DiagonalEnergy& energy,
                                          BudgetLedger& ledger);

}  // namespace avqa
