#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "avqa/circuit.hpp"

namespace avqa {

using Amplitude = std::complex<double>;

inline constexpr int kMaxSimQubits = 16;

/// Dense statevector. Qubit q is bit q of the basis index (qubit 0 = LSB).
class State {
 public:
  /// |0...0> on n qubits, 1 <= n <= kMaxSimQubits.
  explicit State(int n_qubits);
  static State basis(int n_qubits, std::uint64_t index);

  [[nodiscard]] int n_qubits() const { return n_qubits_; }
  [[nodiscard]] std::size_t dimension() const { return amps_.size(); }
  [[nodiscard]] std::span<const Amplitude> amplitudes() const { return amps_; }
  [[nodiscard]] std::span<Amplitude> amplitudes() { return amps_; }
  [[nodiscard]] double norm_squared() const;

  /// Resets to |0...0> without reallocating.
  void reset();
  /// In-place gate application; angle is required iff g is a rotation.
  void apply(const Gate& g, std::optional<double> angle = std::nullopt);

 private:
  int n_qubits_;
  std::vector<Amplitude> amps_;
};

/// Diagonal Hamiltonian: energies[b] is the energy of basis state b.
struct DiagonalEnergy {
  int n_qubits = 0;
  std::vector<double> energies;
};

State apply_gate(State s, const Gate& g, std::optional<double> angle = std::nullopt);

State run_circuit(const Circuit& c);
/// Runs c's gate list with an alternative parameter vector.
State run_circuit(const Circuit& c, std::span<const double> params);
/// Allocation-free variant for hot loops; out must have c.n_qubits() qubits.
void run_circuit_into(const Circuit& c, std::span<const double> params, State& out);

/// sum_b |amp_b|^2 energies[b]. Uncharged: algorithms go through the budget
/// ledger in param_opt instead of calling this directly.
double expectation(const State& s, const DiagonalEnergy& e);

/// |<a|b>|^2
double fidelity(const State& a, const State& b);

}  // namespace avqa
