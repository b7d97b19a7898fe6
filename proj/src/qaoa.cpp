#include "avqa/qaoa.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "avqa/errors.hpp"
#include "avqa/rng.hpp"

namespace avqa::qaoa {

namespace {
constexpr double kFieldTolerance = 1e-12;
}

void Config::validate() const {
  if (p < 1 || p > 10) throw std::invalid_argument("QAOA depth p must be in 1..10");
}

std::vector<double> Ansatz::slot_angles(std::span<const double> layer_angles) const {
  if (layer_angles.size() != static_cast<std::size_t>(2 * p)) {
    throw StructuralError("QAOA expects " + std::to_string(2 * p) + " layer angles");
  }
  std::vector<double> out(bindings.size());
  for (std::size_t s = 0; s < bindings.size(); ++s) {
    out[s] = bindings[s].coefficient * layer_angles[bindings[s].angle_index];
  }
  return out;
}

Circuit Ansatz::realize(std::span<const double> layer_angles) const {
  return circuit.with_params(slot_angles(layer_angles));
}

Ansatz build_ansatz(const IsingModel& m, int p) {
  if (m.n > kMaxSimQubits) throw CapacityError("QAOA circuit limited to 16 qubits");
  Ansatz a;
  a.p = p;
  CircuitBuilder b(m.n);
  for (int q = 0; q < m.n; ++q) b.h(q);
  for (int layer = 0; layer < p; ++layer) {
    const std::size_t gamma = static_cast<std::size_t>(2 * layer);
    const std::size_t beta = gamma + 1;
    // std::map iterates pairs in sorted order.
    for (const auto& [pair, coef] : m.j) {
      b.cnot(pair.first, pair.second).rz(pair.second, 0.0).cnot(pair.first, pair.second);
      a.bindings.push_back({gamma, 2.0 * coef});
    }
    for (int q = 0; q < m.n; ++q) {
      const double field = m.h[static_cast<std::size_t>(q)];
      if (std::abs(field) <= kFieldTolerance) continue;
      b.rz(q, 0.0);
      a.bindings.push_back({gamma, 2.0 * field});
    }
    for (int q = 0; q < m.n; ++q) {
      b.rx(q, 0.0);
      a.bindings.push_back({beta, 2.0});
    }
  }
  a.circuit = b.build();
  return a;
}

AlgorithmResult run(const ProblemContext& ctx, const Config& cfg, BudgetLedger& ledger) {
  cfg.validate();
  Stopwatch clock;
  const Ansatz ansatz = build_ansatz(ctx.model, cfg.p);

  RngStream rng(cfg.init_seed, "qaoa");
  std::vector<double> x0(static_cast<std::size_t>(2 * cfg.p));
  for (double& v : x0) v = rng.uniform(0.0, 2.0 * std::numbers::pi);

  State scratch(ctx.model.n);
  std::vector<double> slots(ansatz.bindings.size());
  const Objective objective = [&](std::span<const double> angles) {
    for (std::size_t s = 0; s < slots.size(); ++s) {
      slots[s] = ansatz.bindings[s].coefficient * angles[ansatz.bindings[s].angle_index];
    }
    run_circuit_into(ansatz.circuit, slots, scratch);
    return expectation(scratch, ctx.energy);
  };
  OptResult opt = minimize(objective, x0, ledger, ledger.global_cap());

  Circuit best = ansatz.realize(opt.evals_used > 0 ? opt.best_params : x0);
  AlgorithmResult r = make_result("qaoa", ctx, best, opt.best_value, opt.best_value, ledger,
                                  ansatz.circuit.size());
  r.wall_time = clock.seconds();
  return r;
}

AlgorithmResult run(const IsingModel& m, const Config& cfg, BudgetLedger& ledger) {
  return run(ProblemContext::from_model(m), cfg, ledger);
}

}  // namespace avqa::qaoa
