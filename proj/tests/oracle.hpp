#pragma once

// Reference implementations used only by tests: a dense-matrix simulator and
// direct enumeration of problem costs, written without the library kernels.

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "avqa/circuit.hpp"
#include "avqa/problems.hpp"
#include "avqa/rng.hpp"

namespace oracle {

using cd = std::complex<double>;
using Matrix = std::vector<std::vector<cd>>;
using Vector = std::vector<cd>;

inline Matrix single_qubit_matrix(avqa::GateKind k, double t) {
  const double c = std::cos(t / 2), s = std::sin(t / 2);
  const cd i(0, 1);
  switch (k) {
    case avqa::GateKind::H: {
      const double r = 1.0 / std::sqrt(2.0);
      return {{r, r}, {r, -r}};
    }
    case avqa::GateKind::RX: return {{c, -i * s}, {-i * s, c}};
    case avqa::GateKind::RY: return {{c, -s}, {s, c}};
    case avqa::GateKind::RZ: return {{std::exp(-i * (t / 2)), 0}, {0, std::exp(i * (t / 2))}};
    default: return {};
  }
}

/// Full 2^n x 2^n unitary of one gate, built entry by entry.
inline Matrix gate_unitary(const avqa::Gate& g, double angle, int n) {
  const std::size_t dim = std::size_t{1} << n;
  Matrix u(dim, std::vector<cd>(dim, cd(0.0)));
  for (std::size_t col = 0; col < dim; ++col) {
    if (g.kind == avqa::GateKind::CNOT) {
      const bool ctrl = (col >> g.qubits[0]) & 1U;
      const std::size_t row = ctrl ? col ^ (std::size_t{1} << g.qubits[1]) : col;
      u[row][col] = 1.0;
      continue;
    }
    const Matrix m = single_qubit_matrix(g.kind, angle);
    const int q = g.qubits[0];
    const std::size_t bit = (col >> q) & 1U;
    for (std::size_t out = 0; out < 2; ++out) {
      const std::size_t row = (col & ~(std::size_t{1} << q)) | (out << q);
      u[row][col] += m[out][bit];
    }
  }
  return u;
}

inline Vector multiply(const Matrix& u, const Vector& v) {
  Vector out(v.size(), cd(0.0));
  for (std::size_t r = 0; r < v.size(); ++r) {
    for (std::size_t c = 0; c < v.size(); ++c) out[r] += u[r][c] * v[c];
  }
  return out;
}

inline Vector simulate(const avqa::Circuit& c) {
  Vector v(std::size_t{1} << c.n_qubits(), cd(0.0));
  v[0] = 1.0;
  for (const avqa::Gate& g : c.gates()) v = multiply(gate_unitary(g, c.angle(g), c.n_qubits()), v);
  return v;
}

/// x^T Q x + constant, straight from the dense matrix.
inline double qubo_cost(const avqa::QuboInstance& q, std::uint64_t bits) {
  double total = q.constant;
  for (int i = 0; i < q.n; ++i) {
    for (int k = 0; k < q.n; ++k) {
      if (((bits >> i) & 1U) && ((bits >> k) & 1U)) total += q.at(i, k);
    }
  }
  return total;
}

/// Largest number of cut edges over all 2-colorings.
inline int max_cut(const std::vector<avqa::Edge>& edges, int n) {
  int best = 0;
  for (std::uint64_t b = 0; b < (std::uint64_t{1} << n); ++b) {
    int cut = 0;
    for (const auto& [u, v] : edges) cut += (((b >> u) ^ (b >> v)) & 1U) ? 1 : 0;
    best = std::max(best, cut);
  }
  return best;
}

/// Random circuit over the full gate set with angles in [-pi, pi).
inline avqa::Circuit random_circuit(int n, std::size_t gates, avqa::RngStream& rng) {
  avqa::CircuitBuilder b(n);
  for (std::size_t k = 0; k < gates; ++k) {
    const auto choice = rng.index(n >= 2 ? 5 : 4);
    const int q = static_cast<int>(rng.index(static_cast<std::size_t>(n)));
    const double a = rng.uniform(-M_PI, M_PI);
    switch (choice) {
      case 0: b.h(q); break;
      case 1: b.rx(q, a); break;
      case 2: b.ry(q, a); break;
      case 3: b.rz(q, a); break;
      default: {
        int t = static_cast<int>(rng.index(static_cast<std::size_t>(n - 1)));
        if (t >= q) ++t;
        b.cnot(q, t);
      }
    }
  }
  return b.build();
}

}  // namespace oracle
