#include "avqa/ra_vqe.hpp"

#include <array>
#include <stdexcept>
#include <string>

#include "avqa/errors.hpp"
#include "avqa/rng.hpp"

namespace avqa {

std::string_view to_string(InitialLayer k) { return k == InitialLayer::SA ? "SA" : "HEA"; }

InitialLayer initial_layer_from_string(std::string_view name) {
  if (name == "SA") return InitialLayer::SA;
  if (name == "HEA") return InitialLayer::HEA;
  throw std::invalid_argument("unknown initial layer '" + std::string(name) + "'");
}

Circuit initial_layer(InitialLayer kind, int n_qubits) {
  if (n_qubits < 2) throw StructuralError("initial layer needs at least 2 qubits");
  CircuitBuilder b(n_qubits);
  for (int q = 0; q < n_qubits; ++q) {
    b.ry(q, 0.0);
    if (kind == InitialLayer::HEA) b.rz(q, 0.0);
  }
  if (kind == InitialLayer::HEA) {
    for (int q = 0; q + 1 < n_qubits; ++q) b.cnot(q, q + 1);
  }
  return b.build();
}

namespace ra_vqe {

Circuit append_random_gate(const Circuit& c, RngStream& rng) {
  static constexpr std::array kPool{GateKind::RX, GateKind::RY, GateKind::RZ, GateKind::CNOT};
  const GateKind kind = kPool[rng.index(kPool.size())];
  const auto n = static_cast<std::size_t>(c.n_qubits());
  const int first = static_cast<int>(rng.index(n));
  Gate g = Gate::rotation(kind, first);
  if (kind == GateKind::CNOT) {
    // Second qubit uniform among the remaining n - 1.
    int second = static_cast<int>(rng.index(n - 1));
    if (second >= first) ++second;
    g = Gate::cnot(first, second);
  }
  return insert_gate(c, g, c.size(), 0.0);
}

AlgorithmResult run(const ProblemContext& ctx, const Config& cfg, BudgetLedger& ledger) {
  Stopwatch clock;
  RngStream rng(cfg.seed, "ra_vqe");
  const std::size_t cap = ledger.per_structure_cap();

  Circuit current = initial_layer(cfg.initial_layer, ctx.model.n);
  OptResult opt = optimize_circuit(current, ctx.energy, ledger, cap);
  current = current.with_params(opt.best_params);
  Circuit best = current;
  double best_value = opt.best_value;
  std::size_t largest = current.size();

  while (!ledger.exhausted()) {
    Circuit candidate = append_random_gate(current, rng);
    largest = std::max(largest, candidate.size());
    opt = optimize_circuit(candidate, ctx.energy, ledger, cap);
    if (opt.evals_used == 0) break;
    current = candidate.with_params(opt.best_params);
    if (opt.best_value < best_value) {
      best_value = opt.best_value;
      best = current;
    }
  }

  AlgorithmResult r = make_result("ravqe", ctx, best, best_value, best_value, ledger, largest);
  r.wall_time = clock.seconds();
  return r;
}

AlgorithmResult run(const IsingModel& m, const Config& cfg, BudgetLedger& ledger) {
  return run(ProblemContext::from_model(m), cfg, ledger);
}

}  // namespace ra_vqe
}  // namespace avqa
