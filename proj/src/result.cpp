#include "avqa/result.hpp"

namespace avqa {

ProblemContext ProblemContext::from_model(IsingModel m) {
  ProblemContext ctx;
  ctx.energy = to_diagonal(m);
  ctx.truth = brute_force_solve(m);
  ctx.model = std::move(m);
  return ctx;
}

AlgorithmResult make_result(std::string algorithm, const ProblemContext& ctx, Circuit best,
                            double expectation, double loss, const BudgetLedger& ledger,
                            std::size_t max_gates_explored) {
  AlgorithmResult r;
  r.algorithm = std::move(algorithm);
  r.expectation = expectation;
  r.loss = loss;
  r.min_energy = ctx.truth.min_energy;
  r.approximation_ratio = approximation_ratio(expectation, ctx.truth.min_energy);
  r.absolute_gap = expectation - ctx.truth.min_energy;
  const GateCounts counts = count_gates(best);
  r.gates = counts.total;
  r.cnot = counts.cnot;
  r.depth = counts.depth;
  r.evals_used = ledger.used();
  r.structures = ledger.structures();
  r.max_structure_evals = ledger.max_structure_evals();
  r.max_gates_explored = std::max(max_gates_explored, counts.total);
  r.best_circuit = std::move(best);
  return r;
}

}  // namespace avqa
