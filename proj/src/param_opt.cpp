#include "avqa/param_opt.hpp"

#include <limits>
#include <stdexcept>
#include <string>

#include "avqa/errors.hpp"

namespace avqa {

BudgetLedger::BudgetLedger(std::size_t global_cap, std::size_t per_structure_cap)
    : global_cap_(global_cap), per_structure_cap_(per_structure_cap) {}

bool BudgetLedger::charge() {
  if (used_ >= global_cap_) return false;
  ++used_;
  return true;
}

void BudgetLedger::record_structure(std::size_t evals) {
  ++structures_;
  max_structure_evals_ = std::max(max_structure_evals_, evals);
}

std::string_view to_string(Termination t) {
  switch (t) {
    case Termination::Converged: return "Converged";
    case Termination::StructureBudget: return "StructureBudget";
    case Termination::GlobalBudget: return "GlobalBudget";
  }
  return "?";
}

OptResult minimize(const Objective& objective, std::vector<double> x0, BudgetLedger& ledger,
                   std::size_t max_evals, const CobylaOptions& options) {
  if (max_evals == 0) throw std::invalid_argument("minimize: max_evals must be at least 1");
  const RefusableObjective charged = [&](std::span<const double> x) -> std::optional<double> {
    if (!ledger.charge()) return std::nullopt;
    return objective(x);
  };
  CobylaResult r = cobyla_minimize(charged, std::move(x0), max_evals, options);
  ledger.record_structure(r.evals);

  OptResult out;
  out.best_params = std::move(r.best_x);
  out.best_value = r.best_f;
  out.evals_used = r.evals;
  switch (r.stop) {
    case CobylaStop::Converged: out.terminated_by = Termination::Converged; break;
    case CobylaStop::MaxEvals: out.terminated_by = Termination::StructureBudget; break;
    case CobylaStop::Refused: out.terminated_by = Termination::GlobalBudget; break;
  }
  // A run that used up the ledger exactly on its last allowed call is still a global stop.
  if (ledger.exhausted() && out.terminated_by != Termination::Converged) {
    out.terminated_by = Termination::GlobalBudget;
  }
  return out;
}

OptResult optimize_circuit(const Circuit& c, const DiagonalEnergy& energy, BudgetLedger& ledger,
                           std::size_t max_evals,
                           std::optional<std::vector<std::size_t>> active_slots) {
  std::vector<std::size_t> slots;
  if (active_slots) {
    slots = std::move(*active_slots);
    for (std::size_t s : slots) {
      if (s >= c.params().size()) {
        throw StructuralError("active slot " + std::to_string(s) + " not in circuit");
      }
    }
  } else {
    slots.resize(c.params().size());
    for (std::size_t i = 0; i < slots.size(); ++i) slots[i] = i;
  }

  std::vector<double> x0(slots.size());
  for (std::size_t i = 0; i < slots.size(); ++i) x0[i] = c.params()[slots[i]];

  std::vector<double> full = c.params();
  State scratch(c.n_qubits());
  const Objective objective = [&](std::span<const double> v) {
    for (std::size_t i = 0; i < slots.size(); ++i) full[slots[i]] = v[i];
    run_circuit_into(c, full, scratch);
    return expectation(scratch, energy);
  };
  OptResult r = minimize(objective, std::move(x0), ledger, max_evals);

  // Re-expand to the full parameter vector; inactive angles are untouched copies.
  std::vector<double> best = c.params();
  if (r.evals_used > 0) {
    for (std::size_t i = 0; i < slots.size(); ++i) best[slots[i]] = r.best_params[i];
  }
  r.best_params = std::move(best);
  return r;
}

std::optional<double> charged_expectation(const Circuit& c, const DiagonalEnergy& energy,
                                          BudgetLedger& ledger) {
  if (!ledger.charge()) return std::nullopt;
  return expectation(run_circuit(c), energy);
}

}  // namespace avqa
