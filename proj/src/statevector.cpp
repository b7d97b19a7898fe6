#include "avqa/statevector.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "avqa/errors.hpp"

namespace avqa {

namespace {

void check_qubit(int q, int n) {
  if (q < 0 || q >= n) {
    throw StructuralError("qubit " + std::to_string(q) + " out of range for " +
                          std::to_string(n) + "-qubit state");
  }
}

/// Applies the 2x2 matrix [[m00, m01], [m10, m11]] to qubit q.
void apply_single(std::vector<Amplitude>& amps, int q, Amplitude m00, Amplitude m01,
                  Amplitude m10, Amplitude m11) {
  const std::size_t stride = std::size_t{1} << q;
  const std::size_t dim = amps.size();
  for (std::size_t base = 0; base < dim; base += 2 * stride) {
    for (std::size_t i = base; i < base + stride; ++i) {
      const Amplitude a0 = amps[i];
      const Amplitude a1 = amps[i + stride];
      amps[i] = m00 * a0 + m01 * a1;
      amps[i + stride] = m10 * a0 + m11 * a1;
    }
  }
}

}  // namespace

State::State(int n_qubits) : n_qubits_(n_qubits) {
  if (n_qubits < 1 || n_qubits > kMaxSimQubits) {
    throw CapacityError("statevector supports 1.." + std::to_string(kMaxSimQubits) +
                        " qubits, got " + std::to_string(n_qubits));
  }
  amps_.assign(std::size_t{1} << n_qubits, Amplitude{0.0, 0.0});
  amps_[0] = 1.0;
}

State State::basis(int n_qubits, std::uint64_t index) {
  State s(n_qubits);
  if (index >= s.dimension()) throw StructuralError("basis index out of range");
  s.amps_[0] = 0.0;
  s.amps_[index] = 1.0;
  return s;
}

double State::norm_squared() const {
  double total = 0.0;
  for (const Amplitude& a : amps_) total += std::norm(a);
  return total;
}

void State::reset() {
  std::fill(amps_.begin(), amps_.end(), Amplitude{0.0, 0.0});
  amps_[0] = 1.0;
}

void State::apply(const Gate& g, std::optional<double> angle) {
  check_qubit(g.qubits[0], n_qubits_);
  if (is_rotation(g.kind) != angle.has_value()) {
    throw StructuralError(std::string("gate ") + std::string(to_string(g.kind)) +
                          (angle ? " takes no angle" : " needs an angle"));
  }
  const int q = g.qubits[0];
  switch (g.kind) {
    case GateKind::H: {
      const double r = std::numbers::sqrt2 / 2.0;
      const std::size_t stride = std::size_t{1} << q;
      for (std::size_t base = 0; base < amps_.size(); base += 2 * stride) {
        for (std::size_t i = base; i < base + stride; ++i) {
          const Amplitude a0 = amps_[i];
          const Amplitude a1 = amps_[i + stride];
          amps_[i] = r * (a0 + a1);
          amps_[i + stride] = r * (a0 - a1);
        }
      }
      break;
    }
    case GateKind::RX: {
      const double c = std::cos(*angle / 2.0);
      const double s = std::sin(*angle / 2.0);
      apply_single(amps_, q, c, {0.0, -s}, {0.0, -s}, c);
      break;
    }
    case GateKind::RY: {
      const double c = std::cos(*angle / 2.0);
      const double s = std::sin(*angle / 2.0);
      apply_single(amps_, q, c, -s, s, c);
      break;
    }
    case GateKind::RZ: {
      const Amplitude phase0 = std::polar(1.0, -*angle / 2.0);
      const Amplitude phase1 = std::polar(1.0, *angle / 2.0);
      const std::size_t bit = std::size_t{1} << q;
      for (std::size_t i = 0; i < amps_.size(); ++i) {
        amps_[i] *= (i & bit) ? phase1 : phase0;
      }
      break;
    }
    case GateKind::CNOT: {
      check_qubit(g.qubits[1], n_qubits_);
      if (g.qubits[0] == g.qubits[1]) throw StructuralError("CNOT control equals target");
      const std::size_t cbit = std::size_t{1} << g.qubits[0];
      const std::size_t tbit = std::size_t{1} << g.qubits[1];
      for (std::size_t i = 0; i < amps_.size(); ++i) {
        if ((i & cbit) && !(i & tbit)) std::swap(amps_[i], amps_[i | tbit]);
      }
      break;
    }
  }
}

State apply_gate(State s, const Gate& g, std::optional<double> angle) {
  s.apply(g, angle);
  return s;
}

void run_circuit_into(const Circuit& c, std::span<const double> params, State& out) {
  if (out.n_qubits() != c.n_qubits()) throw StructuralError("state/circuit qubit mismatch");
  if (params.size() != c.params().size()) throw StructuralError("parameter count mismatch");
  out.reset();
  for (const Gate& g : c.gates()) {
    if (g.param_slot) {
      out.apply(g, params[*g.param_slot]);
    } else {
      out.apply(g);
    }
  }
}

State run_circuit(const Circuit& c, std::span<const double> params) {
  State s(c.n_qubits());
  run_circuit_into(c, params, s);
  return s;
}

State run_circuit(const Circuit& c) { return run_circuit(c, c.params()); }

double expectation(const State& s, const DiagonalEnergy& e) {
  if (e.n_qubits != s.n_qubits() || e.energies.size() != s.dimension()) {
    throw StructuralError("expectation: state has " + std::to_string(s.n_qubits()) +
                          " qubits, energy table has " + std::to_string(e.n_qubits));
  }
  const auto amps = s.amplitudes();
  double total = 0.0;
  for (std::size_t b = 0; b < amps.size(); ++b) total += std::norm(amps[b]) * e.energies[b];
  return total;
}

double fidelity(const State& a, const State& b) {
  if (a.dimension() != b.dimension()) throw StructuralError("fidelity: dimension mismatch");
  Amplitude overlap{0.0, 0.0};
  for (std::size_t i = 0; i < a.dimension(); ++i) {
    overlap += std::conj(a.amplitudes()[i]) * b.amplitudes()[i];
  }
  return std::norm(overlap);
}

}  // namespace avqa
