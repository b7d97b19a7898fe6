#pragma once

#include <cstdint>
#include <string_view>

#include "avqa/circuit.hpp"
#include "avqa/param_opt.hpp"
#include "avqa/result.hpp"
#include "avqa/rng.hpp"

namespace avqa {

/// Starting circuits shared by RA-VQE and VAns.
enum class InitialLayer { SA, HEA };

std::string_view to_string(InitialLayer k);
InitialLayer initial_layer_from_string(std::string_view name);

/// SA: RY on every qubit. HEA: RY and RZ on every qubit, then a CNOT ladder.
/// All angles start at 0.
Circuit initial_layer(InitialLayer kind, int n_qubits);

namespace ra_vqe {

struct Config {
  InitialLayer initial_layer = InitialLayer::SA;
  std::uint64_t seed = 0;
};

/// Appends one uniformly random gate from {RX, RY, RZ, CNOT} on distinct random qubits.
Circuit append_random_gate(const Circuit& c, RngStream& rng);

/// Grows the circuit one random gate at a time, re-optimizing all angles
/// (warm-started, new angle 0) after each addition, until the ledger is spent.
AlgorithmResult run(const ProblemContext& ctx, const Config& cfg, BudgetLedger& ledger);
AlgorithmResult run(const IsingModel& m, const Config& cfg, BudgetLedger& ledger);

}  // namespace ra_vqe
}  // namespace avqa
