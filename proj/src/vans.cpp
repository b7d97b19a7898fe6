#include "avqa/vans.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

#include "avqa/errors.hpp"

namespace avqa::vans {

void Config::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(std::string("VAns config: ") + what);
  };
  require(scale >= 0.0 && scale <= 1.5, "scale must be in [0, 1.5]");
  require(temperature >= 1.0 && temperature <= 20.0, "temperature must be in [1, 20]");
  require(accept_wall >= 30.0 && accept_wall <= 70.0, "accept_wall must be in [30, 70]");
  require(accept_perc >= 0.0 && accept_perc <= 1.0, "accept_perc must be in [0, 1]");
  require(min_randomness >= 30.0 && min_randomness <= 50.0, "min_randomness must be in [30, 50]");
  require(max_randomness >= 50.0 && max_randomness <= 70.0, "max_randomness must be in [50, 70]");
  require(min_randomness <= max_randomness, "min_randomness exceeds max_randomness");
  require(decrease_to >= 1 && decrease_to <= 10, "decrease_to must be in 1..10");
  require(factor_accept_perc >= 0.8 && factor_accept_perc <= 0.99,
          "factor_accept_perc must be in [0.8, 0.99]");
  require(n_iterations >= 1, "n_iterations must be positive");
}

Circuit append_blocks(const Circuit& c, const std::vector<IdentityBlock>& blocks) {
  CircuitBuilder b(c.n_qubits());
  for (const Gate& g : c.gates()) b.add(g, c.angle(g));
  for (const IdentityBlock& blk : blocks) {
    if (blk.kind == BlockKind::Single) {
      b.rz(blk.qubit, 0.0).rx(blk.qubit, 0.0).rz(blk.qubit, 0.0);
    } else {
      b.cnot(blk.qubit, blk.partner)
          .rz(blk.qubit, 0.0)
          .rx(blk.partner, 0.0)
          .cnot(blk.qubit, blk.partner);
    }
  }
  return b.build();
}

std::size_t sample_block_count(double scale, RngStream& rng) {
  if (scale <= 0.0) return 1;
  return 1 + static_cast<std::size_t>(std::floor(rng.exponential(scale)));
}

std::vector<double> qubit_weights(const std::vector<std::size_t>& gate_counts, double temperature) {
  std::vector<double> w(gate_counts.size());
  if (w.empty()) return w;
  // Shift by the minimum count so the largest weight is exactly 1.
  const std::size_t least = *std::min_element(gate_counts.begin(), gate_counts.end());
  for (std::size_t q = 0; q < w.size(); ++q) {
    w[q] = std::exp(-static_cast<double>(gate_counts[q] - least) / temperature);
  }
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  for (double& v : w) v /= total;
  return w;
}

namespace {

std::size_t draw(const std::vector<double>& weights, RngStream& rng) {
  double target = rng.uniform() * std::accumulate(weights.begin(), weights.end(), 0.0);
  for (std::size_t i = 0; i < weights.size(); ++i) {
    target -= weights[i];
    if (target < 0.0) return i;
  }
  for (std::size_t i = weights.size(); i-- > 0;) {
    if (weights[i] > 0.0) return i;
  }
  return 0;
}

}  // namespace

std::vector<IdentityBlock> sample_insertion(const Circuit& c, const Config& cfg, RngStream& rng) {
  const auto n = static_cast<std::size_t>(c.n_qubits());
  std::vector<std::size_t> counts(n, 0);
  for (const Gate& g : c.gates()) {
    ++counts[static_cast<std::size_t>(g.qubits[0])];
    if (g.kind == GateKind::CNOT) ++counts[static_cast<std::size_t>(g.qubits[1])];
  }

  const std::size_t k = sample_block_count(cfg.scale, rng);
  std::vector<IdentityBlock> blocks;
  for (std::size_t i = 0; i < k; ++i) {
    IdentityBlock blk;
    blk.kind = (n >= 2 && rng.bernoulli(0.5)) ? BlockKind::Pair : BlockKind::Single;
    std::vector<double> w = qubit_weights(counts, cfg.temperature);
    blk.qubit = static_cast<int>(draw(w, rng));
    if (blk.kind == BlockKind::Pair) {
      w[static_cast<std::size_t>(blk.qubit)] = 0.0;
      blk.partner = static_cast<int>(draw(w, rng));
      counts[static_cast<std::size_t>(blk.qubit)] += 3;
      counts[static_cast<std::size_t>(blk.partner)] += 3;
    } else {
      counts[static_cast<std::size_t>(blk.qubit)] += 3;
    }
    blocks.push_back(blk);
  }
  return blocks;
}

namespace {

constexpr double kZeroAngle = 1e-12;

bool is_zero_angle(double a) {
  return std::abs(std::remainder(a, 2.0 * std::numbers::pi)) <= kZeroAngle;
}

struct Op {
  GateKind kind;
  int a;
  int b;
  double angle;

  [[nodiscard]] bool touches(int q) const { return a == q || (kind == GateKind::CNOT && b == q); }
};

/// Gate g may be moved past CNOT(c, t) without changing the circuit.
bool commutes_with_cnot(const Op& g, int c, int t) {
  return (g.kind == GateKind::RZ && g.a == c) || (g.kind == GateKind::RX && g.a == t);
}

/// A rotation of kind k on q may be moved past g.
bool rotation_commutes_past(GateKind k, int q, const Op& g) {
  if (g.kind != GateKind::CNOT) return false;
  return (k == GateKind::RZ && g.a == q) || (k == GateKind::RX && g.b == q);
}

bool apply_zero_rotation_rule(std::vector<Op>& ops) {
  const auto it = std::find_if(ops.begin(), ops.end(),
                               [](const Op& o) { return is_rotation(o.kind) && is_zero_angle(o.angle); });
  if (it == ops.end()) return false;
  ops.erase(it);
  return true;
}

bool apply_fresh_qubit_rules(std::vector<Op>& ops, int n) {
  std::vector<bool> touched(static_cast<std::size_t>(n), false);
  for (std::size_t i = 0; i < ops.size(); ++i) {
    const Op& o = ops[i];
    const bool fresh_rz = o.kind == GateKind::RZ && !touched[static_cast<std::size_t>(o.a)];
    const bool idle_control = o.kind == GateKind::CNOT && !touched[static_cast<std::size_t>(o.a)];
    if (fresh_rz || idle_control) {
      ops.erase(ops.begin() + static_cast<std::ptrdiff_t>(i));
      return true;
    }
    touched[static_cast<std::size_t>(o.a)] = true;
    if (o.kind == GateKind::CNOT) touched[static_cast<std::size_t>(o.b)] = true;
  }
  return false;
}

bool apply_cnot_cancellation(std::vector<Op>& ops) {
  for (std::size_t i = 0; i < ops.size(); ++i) {
    if (ops[i].kind != GateKind::CNOT) continue;
    const int c = ops[i].a;
    const int t = ops[i].b;
    for (std::size_t j = i + 1; j < ops.size(); ++j) {
      const Op& g = ops[j];
      if (!g.touches(c) && !g.touches(t)) continue;
      if (g.kind == GateKind::CNOT && g.a == c && g.b == t) {
        ops.erase(ops.begin() + static_cast<std::ptrdiff_t>(j));
        ops.erase(ops.begin() + static_cast<std::ptrdiff_t>(i));
        return true;
      }
      if (!commutes_with_cnot(g, c, t)) break;
    }
  }
  return false;
}

bool apply_rotation_merge(std::vector<Op>& ops) {
  for (std::size_t i = 0; i < ops.size(); ++i) {
    if (!is_rotation(ops[i].kind)) continue;
    const GateKind k = ops[i].kind;
    const int q = ops[i].a;
    for (std::size_t j = i + 1; j < ops.size(); ++j) {
      const Op& g = ops[j];
      if (!g.touches(q)) continue;
      if (g.kind == k) {
        ops[i].angle += g.angle;
        ops.erase(ops.begin() + static_cast<std::ptrdiff_t>(j));
        if (is_zero_angle(ops[i].angle)) ops.erase(ops.begin() + static_cast<std::ptrdiff_t>(i));
        return true;
      }
      if (!rotation_commutes_past(k, q, g)) break;
    }
  }
  return false;
}

}  // namespace

Circuit simplify_algebraic(const Circuit& c) {
  std::vector<Op> ops;
  ops.reserve(c.size());
  for (const Gate& g : c.gates()) ops.push_back({g.kind, g.qubits[0], g.qubits[1], c.angle(g)});

  while (apply_zero_rotation_rule(ops) || apply_fresh_qubit_rules(ops, c.n_qubits()) ||
         apply_cnot_cancellation(ops) || apply_rotation_merge(ops)) {
  }

  CircuitBuilder b(c.n_qubits());
  for (const Op& o : ops) {
    if (o.kind == GateKind::CNOT) {
      b.cnot(o.a, o.b);
    } else if (o.kind == GateKind::H) {
      b.h(o.a);
    } else {
      b.rotation(o.kind, o.a, o.angle);
    }
  }
  return b.build();
}

CostSimplification simplify_cost(const Circuit& c, const DiagonalEnergy& energy,
                                 double accept_wall_now, BudgetLedger& ledger,
                                 double full_expectation) {
  CostSimplification out{c, full_expectation, 0, false};
  while (!out.circuit.empty()) {
    const double threshold = out.expectation + std::abs(out.expectation) / accept_wall_now;
    std::optional<std::size_t> pick;
    double pick_value = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < out.circuit.size(); ++k) {
      const Circuit without = remove_gate(out.circuit, k);
      const std::optional<double> e = charged_expectation(without, energy, ledger);
      if (!e) {
        out.budget_exhausted = true;
        return out;
      }
      if (*e <= threshold && *e < pick_value) {
        pick = k;
        pick_value = *e;
      }
    }
    if (!pick) break;
    out.circuit = remove_gate(out.circuit, *pick);
    out.expectation = pick_value;
    ++out.removed;
  }
  return out;
}

double accept_wall_schedule(const Config& cfg, int iteration) {
  const int span = (cfg.n_iterations + cfg.decrease_to - 1) / cfg.decrease_to;
  const double progress = std::min(1.0, static_cast<double>(iteration) / static_cast<double>(span));
  return cfg.max_randomness + (cfg.min_randomness - cfg.max_randomness) * progress;
}

AlgorithmResult run(const ProblemContext& ctx, const Config& cfg, BudgetLedger& ledger) {
  cfg.validate();
  Stopwatch clock;
  RngStream rng(cfg.seed, "vans");
  const std::size_t cap = ledger.per_structure_cap();

  Circuit current = initial_layer(cfg.initial_layer, ctx.model.n);
  OptResult opt = optimize_circuit(current, ctx.energy, ledger, cap);
  current = current.with_params(opt.best_params);
  double current_value = opt.best_value;
  Circuit best = current;
  double best_value = current_value;
  std::size_t largest = current.size();
  double accept_perc_now = cfg.accept_perc;

  for (int t = 0; t < cfg.n_iterations && !ledger.exhausted(); ++t) {
    Circuit candidate = append_blocks(current, sample_insertion(current, cfg, rng));
    largest = std::max(largest, candidate.size());

    opt = optimize_circuit(candidate, ctx.energy, ledger, cap);
    if (opt.evals_used == 0) break;
    candidate = simplify_algebraic(candidate.with_params(opt.best_params));
    double value = opt.best_value;

    const CostSimplification pruned =
        simplify_cost(candidate, ctx.energy, accept_wall_schedule(cfg, t), ledger, value);
    candidate = simplify_algebraic(pruned.circuit);
    value = pruned.expectation;
    if (pruned.removed > 0 && !pruned.budget_exhausted && !candidate.empty()) {
      opt = optimize_circuit(candidate, ctx.energy, ledger, cap);
      if (opt.evals_used > 0) {
        candidate = candidate.with_params(opt.best_params);
        value = opt.best_value;
      }
    }

    const bool accepted =
        !candidate.empty() && value - best_value < accept_perc_now * std::abs(best_value);
    if (accepted) {
      current = candidate;
      current_value = value;
      if (value < best_value) {
        best_value = value;
        best = candidate;
      }
    } else {
      current = best;
      current_value = best_value;
    }
    accept_perc_now *= cfg.factor_accept_perc;
  }

  AlgorithmResult r = make_result("vans", ctx, best, best_value, best_value, ledger, largest);
  r.wall_time = clock.seconds();
  return r;
}

AlgorithmResult run(const IsingModel& m, const Config& cfg, BudgetLedger& ledger) {
  return run(ProblemContext::from_model(m), cfg, ledger);
}

}  // namespace avqa::vans
