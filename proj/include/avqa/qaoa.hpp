#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "avqa/circuit.hpp"
#include "avqa/param_opt.hpp"
#include "avqa/result.hpp"

namespace avqa::qaoa {

struct Config {
  int p = 1;
  std::uint64_t init_seed = 0;

  void validate() const;
};

/// Maps one circuit slot to a (gamma or beta) layer angle times a fixed coefficient.
struct SlotBinding {
  std::size_t angle_index = 0;  // 2l for gamma_l, 2l + 1 for beta_l
  double coefficient = 0.0;
};

/// The depth-p circuit plus the expansion of its 2p shared angles to slots.
struct Ansatz {
  Circuit circuit{1};
  std::vector<SlotBinding> bindings;  // indexed by circuit slot
  int p = 0;

  /// Slot angles realized from (gamma_0, beta_0, gamma_1, beta_1, ...).
  [[nodiscard]] std::vector<double> slot_angles(std::span<const double> layer_angles) const;
  [[nodiscard]] Circuit realize(std::span<const double> layer_angles) const;
};

/// H on all qubits, then p layers of CNOT-RZ-CNOT per coupling, RZ per
/// nonzero field, and RX on every qubit.
Ansatz build_ansatz(const IsingModel& m, int p);
inline Circuit build_circuit(const IsingModel& m, int p) { return build_ansatz(m, p).circuit; }

/// Uniform [0, 2pi) start, one optimization over the 2p angles with the whole global budget.
AlgorithmResult run(const ProblemContext& ctx, const Config& cfg, BudgetLedger& ledger);
AlgorithmResult run(const IsingModel& m, const Config& cfg, BudgetLedger& ledger);

}  // namespace avqa::qaoa
