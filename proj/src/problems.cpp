#include "avqa/problems.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "avqa/errors.hpp"
#include "avqa/rng.hpp"

namespace avqa {

std::string_view to_string(ProblemKind k) {
  switch (k) {
    case ProblemKind::MaxCutER: return "MaxCutER";
    case ProblemKind::MaxCutStar: return "MaxCutStar";
    case ProblemKind::VertexCoverER: return "VertexCoverER";
    case ProblemKind::NumberPartitioning: return "NumberPartitioning";
  }
  return "?";
}

ProblemKind problem_kind_from_string(std::string_view name) {
  for (ProblemKind k : {ProblemKind::MaxCutER, ProblemKind::MaxCutStar,
                        ProblemKind::VertexCoverER, ProblemKind::NumberPartitioning}) {
    if (to_string(k) == name) return k;
  }
  throw std::invalid_argument("unknown problem kind '" + std::string(name) + "'");
}

void ProblemSpec::validate() const {
  if (n < 2) throw std::invalid_argument("problem needs n >= 2");
  if (!(edge_prob > 0.0 && edge_prob <= 1.0)) throw std::invalid_argument("edge_prob must be in (0, 1]");
  if (!(penalty > 0.0)) throw std::invalid_argument("penalty must be positive");
  if (value_lo > value_hi) throw std::invalid_argument("empty value range");
}

namespace {

std::vector<Edge> sample_er_edges(int n, double p, RngStream& rng) {
  for (;;) {
    std::vector<Edge> edges;
    for (int i = 0; i < n; ++i) {
      for (int k = i + 1; k < n; ++k) {
        if (rng.bernoulli(p)) edges.emplace_back(i, k);
      }
    }
    if (!edges.empty()) return edges;
  }
}

struct QuboBuilder {
  int n;
  std::vector<double> q;
  explicit QuboBuilder(int n_) : n(n_), q(static_cast<std::size_t>(n_ * n_), 0.0) {}
  void linear(int i, double v) { q[static_cast<std::size_t>(i * n + i)] += v; }
  /// Adds v * x_i x_k, split symmetrically.
  void quadratic(int i, int k, double v) {
    q[static_cast<std::size_t>(i * n + k)] += v / 2.0;
    q[static_cast<std::size_t>(k * n + i)] += v / 2.0;
  }
};

}  // namespace

QuboInstance generate(const ProblemSpec& spec) {
  spec.validate();
  RngStream rng(spec.seed, std::string(to_string(spec.kind)));
  QuboInstance inst;
  inst.spec = spec;
  inst.n = spec.n;
  QuboBuilder b(spec.n);

  switch (spec.kind) {
    case ProblemKind::MaxCutER:
    case ProblemKind::MaxCutStar: {
      if (spec.kind == ProblemKind::MaxCutStar) {
        for (int k = 1; k < spec.n; ++k) inst.edges.emplace_back(0, k);
      } else {
        inst.edges = sample_er_edges(spec.n, spec.edge_prob, rng);
      }
      for (auto [i, k] : inst.edges) {
        b.quadratic(i, k, 2.0);
        b.linear(i, -1.0);
        b.linear(k, -1.0);
      }
      break;
    }
    case ProblemKind::VertexCoverER: {
      inst.edges = sample_er_edges(spec.n, spec.edge_prob, rng);
      for (int i = 0; i < spec.n; ++i) b.linear(i, 1.0);
      for (auto [i, k] : inst.edges) {
        inst.constant += spec.penalty;
        b.linear(i, -spec.penalty);
        b.linear(k, -spec.penalty);
        b.quadratic(i, k, spec.penalty);
      }
      break;
    }
    case ProblemKind::NumberPartitioning: {
      for (int i = 0; i < spec.n; ++i) {
        inst.values.push_back(static_cast<int>(rng.integer(spec.value_lo, spec.value_hi)));
      }
      const double c = std::accumulate(inst.values.begin(), inst.values.end(), 0.0);
      for (int i = 0; i < spec.n; ++i) {
        const double si = inst.values[static_cast<std::size_t>(i)];
        b.linear(i, si * (si - c));
        for (int k = i + 1; k < spec.n; ++k) {
          b.quadratic(i, k, 2.0 * si * inst.values[static_cast<std::size_t>(k)]);
        }
      }
      break;
    }
  }
  inst.q = std::move(b.q);
  return inst;
}

double qubo_cost(const QuboInstance& q, std::uint64_t bits) {
  double cost = q.constant;
  for (int i = 0; i < q.n; ++i) {
    if (!((bits >> i) & 1U)) continue;
    for (int k = 0; k < q.n; ++k) {
      if ((bits >> k) & 1U) cost += q.at(i, k);
    }
  }
  return cost;
}

IsingModel qubo_to_ising(const QuboInstance& q) {
  // x_i = (1 - z_i) / 2, x_i x_k = (1 - z_i - z_k + z_i z_k) / 4.
  IsingModel m;
  m.n = q.n;
  m.h.assign(static_cast<std::size_t>(q.n), 0.0);
  m.offset = q.constant;
  for (int i = 0; i < q.n; ++i) {
    const double lin = q.at(i, i);
    m.offset += lin / 2.0;
    m.h[static_cast<std::size_t>(i)] -= lin / 2.0;
    for (int k = i + 1; k < q.n; ++k) {
      const double c = q.at(i, k) + q.at(k, i);
      if (c == 0.0) continue;
      m.offset += c / 4.0;
      m.h[static_cast<std::size_t>(i)] -= c / 4.0;
      m.h[static_cast<std::size_t>(k)] -= c / 4.0;
      m.j[{i, k}] += c / 4.0;
    }
  }
  return m;
}

double ising_energy(const IsingModel& m, std::uint64_t bits) {
  auto spin = [bits](int q) { return ((bits >> q) & 1U) ? -1.0 : 1.0; };
  double e = m.offset;
  for (int i = 0; i < m.n; ++i) e += m.h[static_cast<std::size_t>(i)] * spin(i);
  for (const auto& [pair, coef] : m.j) e += coef * spin(pair.first) * spin(pair.second);
  return e;
}

GroundTruth brute_force_solve(const IsingModel& m) {
  if (m.n > kMaxBruteForceVariables) {
    throw CapacityError("brute force limited to " + std::to_string(kMaxBruteForceVariables) +
                        " variables, got " + std::to_string(m.n));
  }
  const std::uint64_t count = std::uint64_t{1} << m.n;
  std::vector<double> energies(count);
  double best = std::numeric_limits<double>::infinity();
  for (std::uint64_t b = 0; b < count; ++b) {
    energies[b] = ising_energy(m, b);
    best = std::min(best, energies[b]);
  }
  GroundTruth gt;
  gt.min_energy = best;
  const double tol = 1e-9 * std::max(1.0, std::abs(best));
  for (std::uint64_t b = 0; b < count; ++b) {
    if (energies[b] - best <= tol) gt.argmin.push_back(b);
  }
  return gt;
}

DiagonalEnergy to_diagonal(const IsingModel& m) {
  if (m.n > kMaxSimQubits) {
    throw CapacityError("diagonal energy table limited to " + std::to_string(kMaxSimQubits) +
                        " qubits, got " + std::to_string(m.n));
  }
  DiagonalEnergy d;
  d.n_qubits = m.n;
  const std::size_t dim = std::size_t{1} << m.n;
  d.energies.assign(dim, m.offset);
  // Term-by-term accumulation over the whole table (independent of ising_energy).
  for (int i = 0; i < m.n; ++i) {
    const double hi = m.h[static_cast<std::size_t>(i)];
    if (hi == 0.0) continue;
    const std::size_t bit = std::size_t{1} << i;
    for (std::size_t b = 0; b < dim; ++b) d.energies[b] += (b & bit) ? -hi : hi;
  }
  for (const auto& [pair, coef] : m.j) {
    const std::size_t mask = (std::size_t{1} << pair.first) | (std::size_t{1} << pair.second);
    for (std::size_t b = 0; b < dim; ++b) {
      const bool odd = std::popcount(b & mask) == 1;
      d.energies[b] += odd ? -coef : coef;
    }
  }
  return d;
}

std::optional<double> approximation_ratio(double expectation, double min_energy) {
  if (std::abs(min_energy) < 1e-9) return std::nullopt;
  return expectation / min_energy;
}

std::string bitstring(std::uint64_t bits, int n) {
  std::string s(static_cast<std::size_t>(n), '0');
  for (int q = 0; q < n; ++q) {
    if ((bits >> q) & 1U) s[static_cast<std::size_t>(q)] = '1';
  }
  return s;
}

std::uint64_t parse_bitstring(std::string_view s) {
  std::uint64_t bits = 0;
  for (std::size_t q = 0; q < s.size(); ++q) {
    if (s[q] == '1') {
      bits |= std::uint64_t{1} << q;
    } else if (s[q] != '0') {
      throw std::invalid_argument("bitstring must contain only 0/1");
    }
  }
  return bits;
}

}  // namespace avqa
