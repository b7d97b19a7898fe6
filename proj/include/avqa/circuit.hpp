#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace avqa {

enum class GateKind : std::uint8_t { H, RX, RY, RZ, CNOT };

constexpr bool is_rotation(GateKind k) {
  return k == GateKind::RX || k == GateKind::RY || k == GateKind::RZ;
}

constexpr int arity(GateKind k) { return k == GateKind::CNOT ? 2 : 1; }

std::string_view to_string(GateKind k);
GateKind gate_kind_from_string(std::string_view name);

/// One gate of a circuit. CNOT stores qubits as {control, target}; rotations
/// reference their angle through param_slot.
struct Gate {
  GateKind kind = GateKind::H;
  std::array<int, 2> qubits{0, -1};
  std::optional<std::size_t> param_slot;

  static Gate h(int q) { return {GateKind::H, {q, -1}, std::nullopt}; }
  static Gate rotation(GateKind k, int q, std::optional<std::size_t> slot = std::nullopt) {
    return {k, {q, -1}, slot};
  }
  static Gate rx(int q) { return rotation(GateKind::RX, q); }
  static Gate ry(int q) { return rotation(GateKind::RY, q); }
  static Gate rz(int q) { return rotation(GateKind::RZ, q); }
  static Gate cnot(int control, int target) {
    return {GateKind::CNOT, {control, target}, std::nullopt};
  }

  [[nodiscard]] int qubit() const { return qubits[0]; }
  [[nodiscard]] int control() const { return qubits[0]; }
  [[nodiscard]] int target() const { return qubits[1]; }
  [[nodiscard]] bool acts_on(int q) const {
    return qubits[0] == q || (kind == GateKind::CNOT && qubits[1] == q);
  }

  friend bool operator==(const Gate&, const Gate&) = default;
};

/**
 * Parameterized circuit over n qubits. Gates apply left to right; every
 * rotation owns exactly one slot of params() and the slot set is always
 * {0, ..., params().size() - 1}. Instances are immutable; the mutation
 * primitives below return new circuits.
 */
class Circuit {
 public:
  explicit Circuit(int n_qubits);
  /// Validates all invariants; throws StructuralError on violation.
  Circuit(int n_qubits, std::vector<Gate> gates, std::vector<double> params);

  [[nodiscard]] int n_qubits() const { return n_qubits_; }
  [[nodiscard]] const std::vector<Gate>& gates() const { return gates_; }
  [[nodiscard]] const std::vector<double>& params() const { return params_; }
  [[nodiscard]] std::size_t size() const { return gates_.size(); }
  [[nodiscard]] bool empty() const { return gates_.empty(); }

  /// Angle of a rotation gate (0 for H and CNOT).
  [[nodiscard]] double angle(const Gate& g) const {
    return g.param_slot ? params_[*g.param_slot] : 0.0;
  }

  [[nodiscard]] Circuit with_params(std::vector<double> params) const;

  friend bool operator==(const Circuit&, const Circuit&) = default;

 private:
  int n_qubits_;
  std::vector<Gate> gates_;
  std::vector<double> params_;
};

/// Appends gates with slots allocated in order of appearance.
class CircuitBuilder {
 public:
  explicit CircuitBuilder(int n_qubits) : n_qubits_(n_qubits) {}

  CircuitBuilder& h(int q);
  CircuitBuilder& rx(int q, double angle);
  CircuitBuilder& ry(int q, double angle);
  CircuitBuilder& rz(int q, double angle);
  CircuitBuilder& rotation(GateKind kind, int q, double angle);
  CircuitBuilder& cnot(int control, int target);
  /// Any gate; a rotation gets a fresh slot holding angle.
  CircuitBuilder& add(const Gate& g, double angle = 0.0);

  [[nodiscard]] Circuit build() const;

 private:
  int n_qubits_;
  std::vector<Gate> gates_;
  std::vector<double> params_;
};

struct GateCounts {
  std::size_t total = 0;
  std::size_t cnot = 0;
  std::size_t depth = 0;

  friend bool operator==(const GateCounts&, const GateCounts&) = default;
};

/// Depth layers every gate: layer(g) = 1 + max layer of the previous gates on g's qubits.
GateCounts count_gates(const Circuit& c);

/// Inserts g before position (position == size() appends). A rotation gets a
/// new slot appended to params holding init_angle; g.param_slot is ignored.
Circuit insert_gate(const Circuit& c, Gate g, std::size_t position, double init_angle = 0.0);

/// Removes the gate at position, deleting and compacting its slot if it owned one.
Circuit remove_gate(const Circuit& c, std::size_t position);

/// Same gates with slots renumbered in gate order (params permuted accordingly).
Circuit canonicalize_slots(const Circuit& c);

/// Exact inverse: gates in reverse order with negated angles.
Circuit inverse(const Circuit& c);

}  // namespace avqa
