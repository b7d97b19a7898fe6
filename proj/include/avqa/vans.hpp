#pragma once

#include <cstdint>
#include <vector>

#include "avqa/circuit.hpp"
#include "avqa/param_opt.hpp"
#include "avqa/ra_vqe.hpp"
#include "avqa/result.hpp"
#include "avqa/rng.hpp"

namespace avqa::vans {

struct Config {
  InitialLayer initial_layer = InitialLayer::SA;
  double scale = 0.5;
  double temperature = 10.0;
  double accept_wall = 50.0;
  double accept_perc = 0.1;
  double min_randomness = 40.0;
  double max_randomness = 60.0;
  int decrease_to = 5;
  double factor_accept_perc = 0.9;
  std::uint64_t seed = 0;
  int n_iterations = 50;

  void validate() const;
};

enum class BlockKind { Single, Pair };

/// Single: RZ RX RZ on one qubit. Pair: CNOT(c,t) RZ(c) RX(t) CNOT(c,t).
/// With zero angles both act as the identity.
struct IdentityBlock {
  BlockKind kind = BlockKind::Single;
  int qubit = 0;
  int partner = -1;  // Pair target

  friend bool operator==(const IdentityBlock&, const IdentityBlock&) = default;
};

/// Appends each block with all-zero angles.
Circuit append_blocks(const Circuit& c, const std::vector<IdentityBlock>& blocks);

/// Block count 1 + floor(x), x ~ Exponential(mean = scale); scale 0 gives 1.
std::size_t sample_block_count(double scale, RngStream& rng);

/// Softmax weights exp(-count_q / temperature) over qubits, normalized.
std::vector<double> qubit_weights(const std::vector<std::size_t>& gate_counts, double temperature);

std::vector<IdentityBlock> sample_insertion(const Circuit& c, const Config& cfg, RngStream& rng);

/**
 * Algebraic simplification to a fixpoint:
 *   R1 CNOT pairs with equal (control, target) cancel,
 *   R2 same-axis rotations on one qubit merge, vanishing when the sum is 0 mod 2pi,
 *   R3 an RZ on a qubit with no earlier gate is dropped,
 *   R4 a CNOT whose control has no earlier gate is dropped,
 *   R5 rotations by 0 mod 2pi are dropped.
 * Pairs for R1/R2 may be separated by gates they commute with: RZ on a CNOT
 * control and RX on a CNOT target. Every rewrite removes a gate, so it terminates.
 * Slots of the result follow gate order.
 */
Circuit simplify_algebraic(const Circuit& c);

struct CostSimplification {
  Circuit circuit{1};
  double expectation = 0.0;
  std::size_t removed = 0;
  bool budget_exhausted = false;
};

/// Repeatedly drops the single gate whose removal gives the lowest expectation
/// among removals with E_without <= E_full + |E_full| / accept_wall_now.
CostSimplification simplify_cost(const Circuit& c, const DiagonalEnergy& energy,
                                 double accept_wall_now, BudgetLedger& ledger,
                                 double full_expectation);

/// Linear from max_randomness to min_randomness over the first
/// ceil(n_iterations / decrease_to) iterations, then flat.
double accept_wall_schedule(const Config& cfg, int iteration);

AlgorithmResult run(const ProblemContext& ctx, const Config& cfg, BudgetLedger& ledger);
AlgorithmResult run(const IsingModel& m, const Config& cfg, BudgetLedger& ledger);

}  // namespace avqa::vans
