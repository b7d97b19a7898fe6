#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "avqa/statevector.hpp"

namespace avqa {

enum class ProblemKind { MaxCutER, MaxCutStar, VertexCoverER, NumberPartitioning };

std::string_view to_string(ProblemKind k);
ProblemKind problem_kind_from_string(std::string_view name);

struct ProblemSpec {
  ProblemKind kind = ProblemKind::MaxCutER;
  int n = 4;
  std::uint64_t seed = 0;
  double edge_prob = 0.7;
  double penalty = 8.0;
  int value_lo = 1;
  int value_hi = 20;

  /// Throws std::invalid_argument when a field is out of its domain.
  void validate() const;
};

using Edge = std::pair<int, int>;

/// cost(x) = x^T q x + constant over binary x, q symmetric n x n row-major.
struct QuboInstance {
  ProblemSpec spec;
  int n = 0;
  std::vector<double> q;
  double constant = 0.0;
  /// Graph edges (MaxCut / VertexCover) or partition values, kept for reporting.
  std::vector<Edge> edges;
  std::vector<int> values;

  [[nodiscard]] double at(int i, int k) const {
    return q[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) + static_cast<std::size_t>(k)];
  }
};

/// E(z) = sum_i h_i z_i + sum_{i<k} j_ik z_i z_k + offset, with z_i = +1 for bit 0.
struct IsingModel {
  int n = 0;
  std::vector<double> h;
  std::map<std::pair<int, int>, double> j;
  double offset = 0.0;
};

struct GroundTruth {
  double min_energy = 0.0;
  /// Minimizing basis indices (bit q = qubit q), ascending.
  std::vector<std::uint64_t> argmin;
};

inline constexpr int kMaxBruteForceVariables = 20;

QuboInstance generate(const ProblemSpec& spec);

double qubo_cost(const QuboInstance& q, std::uint64_t bits);
IsingModel qubo_to_ising(const QuboInstance& q);
double ising_energy(const IsingModel& m, std::uint64_t bits);

/// Exhaustive scan of all 2^n assignments (n <= kMaxBruteForceVariables).
GroundTruth brute_force_solve(const IsingModel& m);

/// Per-basis-state energy table for the statevector kernel (n <= kMaxSimQubits).
DiagonalEnergy to_diagonal(const IsingModel& m);

/// expectation / min_energy, undefined when |min_energy| < 1e-9.
std::optional<double> approximation_ratio(double expectation, double min_energy);

/// Bitstring with qubit 0 leftmost.
std::string bitstring(std::uint64_t bits, int n);
std::uint64_t parse_bitstring(std::string_view s);

}  // namespace avqa
