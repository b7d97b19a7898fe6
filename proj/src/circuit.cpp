#include "avqa/circuit.hpp"

#include <algorithm>
#include <string>

#include "avqa/errors.hpp"

namespace avqa {

std::string_view to_string(GateKind k) {
  switch (k) {
    case GateKind::H: return "H";
    case GateKind::RX: return "RX";
    case GateKind::RY: return "RY";
    case GateKind::RZ: return "RZ";
    case GateKind::CNOT: return "CNOT";
  }
  return "?";
}

GateKind gate_kind_from_string(std::string_view name) {
  for (GateKind k : {GateKind::H, GateKind::RX, GateKind::RY, GateKind::RZ, GateKind::CNOT}) {
    if (to_string(k) == name) return k;
  }
  throw StructuralError("unknown gate kind '" + std::string(name) + "'");
}

namespace {

void validate_gate(const Gate& g, int n_qubits) {
  auto in_range = [n_qubits](int q) { return q >= 0 && q < n_qubits; };
  if (!in_range(g.qubits[0])) {
    throw StructuralError("gate " + std::string(to_string(g.kind)) + " acts on qubit " +
                          std::to_string(g.qubits[0]) + " outside a " +
                          std::to_string(n_qubits) + "-qubit circuit");
  }
  if (g.kind == GateKind::CNOT) {
    if (!in_range(g.qubits[1])) {
      throw StructuralError("CNOT target " + std::to_string(g.qubits[1]) + " out of range");
    }
    if (g.qubits[0] == g.qubits[1]) throw StructuralError("CNOT control equals target");
  }
  if (is_rotation(g.kind) != g.param_slot.has_value()) {
    throw StructuralError("gate " + std::string(to_string(g.kind)) +
                          (is_rotation(g.kind) ? " requires" : " must not carry") +
                          " a parameter slot");
  }
}

}  // namespace

Circuit::Circuit(int n_qubits) : n_qubits_(n_qubits) {
  if (n_qubits <= 0) throw StructuralError("circuit needs at least one qubit");
}

Circuit::Circuit(int n_qubits, std::vector<Gate> gates, std::vector<double> params)
    : n_qubits_(n_qubits), gates_(std::move(gates)), params_(std::move(params)) {
  if (n_qubits <= 0) throw StructuralError("circuit needs at least one qubit");
  std::vector<bool> seen(params_.size(), false);
  for (const Gate& g : gates_) {
    validate_gate(g, n_qubits_);
    if (!g.param_slot) continue;
    const std::size_t slot = *g.param_slot;
    if (slot >= params_.size()) {
      throw StructuralError("parameter slot " + std::to_string(slot) + " out of range");
    }
    if (seen[slot]) throw StructuralError("parameter slot " + std::to_string(slot) + " shared");
    seen[slot] = true;
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
    throw StructuralError("parameter vector has unreferenced slots");
  }
}

Circuit Circuit::with_params(std::vector<double> params) const {
  if (params.size() != params_.size()) {
    throw StructuralError("with_params: expected " + std::to_string(params_.size()) +
                          " angles, got " + std::to_string(params.size()));
  }
  Circuit out = *this;
  out.params_ = std::move(params);
  return out;
}

CircuitBuilder& CircuitBuilder::h(int q) { return add(Gate::h(q)); }
CircuitBuilder& CircuitBuilder::rx(int q, double a) { return rotation(GateKind::RX, q, a); }
CircuitBuilder& CircuitBuilder::ry(int q, double a) { return rotation(GateKind::RY, q, a); }
CircuitBuilder& CircuitBuilder::rz(int q, double a) { return rotation(GateKind::RZ, q, a); }
CircuitBuilder& CircuitBuilder::rotation(GateKind kind, int q, double angle) {
  return add(Gate::rotation(kind, q), angle);
}
CircuitBuilder& CircuitBuilder::cnot(int c, int t) { return add(Gate::cnot(c, t)); }

CircuitBuilder& CircuitBuilder::add(const Gate& g, double angle) {
  Gate copy = g;
  copy.param_slot.reset();
  if (is_rotation(g.kind)) {
    copy.param_slot = params_.size();
    params_.push_back(angle);
  }
  gates_.push_back(copy);
  return *this;
}

Circuit CircuitBuilder::build() const { return Circuit(n_qubits_, gates_, params_); }

GateCounts count_gates(const Circuit& c) {
  GateCounts counts;
  counts.total = c.size();
  std::vector<std::size_t> layer(static_cast<std::size_t>(c.n_qubits()), 0);
  for (const Gate& g : c.gates()) {
    const auto q0 = static_cast<std::size_t>(g.qubits[0]);
    if (g.kind == GateKind::CNOT) {
      ++counts.cnot;
      const auto q1 = static_cast<std::size_t>(g.qubits[1]);
      const std::size_t l = std::max(layer[q0], layer[q1]) + 1;
      layer[q0] = layer[q1] = l;
    } else {
      ++layer[q0];
    }
  }
  counts.depth = layer.empty() ? 0 : *std::max_element(layer.begin(), layer.end());
  return counts;
}

Circuit insert_gate(const Circuit& c, Gate g, std::size_t position, double init_angle) {
  if (position > c.size()) {
    throw StructuralError("insert_gate: position " + std::to_string(position) +
                          " beyond circuit of " + std::to_string(c.size()) + " gates");
  }
  std::vector<Gate> gates = c.gates();
  std::vector<double> params = c.params();
  g.param_slot.reset();
  if (is_rotation(g.kind)) {
    g.param_slot = params.size();
    params.push_back(init_angle);
  }
  gates.insert(gates.begin() + static_cast<std::ptrdiff_t>(position), g);
  return Circuit(c.n_qubits(), std::move(gates), std::move(params));
}

Circuit remove_gate(const Circuit& c, std::size_t position) {
  if (position >= c.size()) {
    throw StructuralError("remove_gate: position " + std::to_string(position) +
                          " out of range for " + std::to_string(c.size()) + " gates");
  }
  std::vector<Gate> gates = c.gates();
  std::vector<double> params = c.params();
  const std::optional<std::size_t> removed = gates[position].param_slot;
  gates.erase(gates.begin() + static_cast<std::ptrdiff_t>(position));
  if (removed) {
    params.erase(params.begin() + static_cast<std::ptrdiff_t>(*removed));
    for (Gate& g : gates) {
      if (g.param_slot && *g.param_slot > *removed) --*g.param_slot;
    }
  }
  return Circuit(c.n_qubits(), std::move(gates), std::move(params));
}

Circuit canonicalize_slots(const Circuit& c) {
  CircuitBuilder b(c.n_qubits());
  for (const Gate& g : c.gates()) b.add(g, c.angle(g));
  return b.build();
}

Circuit inverse(const Circuit& c) {
  CircuitBuilder b(c.n_qubits());
  for (auto it = c.gates().rbegin(); it != c.gates().rend(); ++it) b.add(*it, -c.angle(*it));
  return b.build();
}

}  // namespace avqa
