#include <gtest/gtest.h>

#include <cmath>

#include "avqa/errors.hpp"
#include "avqa/problems.hpp"
#include "avqa/statevector.hpp"
#include "oracle.hpp"

using namespace avqa;

namespace {

IsingModel star(int n) {
  ProblemSpec s;
  s.kind = ProblemKind::MaxCutStar;
  s.n = n;
  return qubo_to_ising(generate(s));
}

}  // namespace

TEST(Statevector, HadamardOnZero) {
  const State s = apply_gate(State(1), Gate::h(0));
  EXPECT_NEAR(s.amplitudes()[0].real(), 1 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(s.amplitudes()[1].real(), 1 / std::sqrt(2.0), 1e-15);
}

TEST(Statevector, RxPiFlips) {
  const State s = apply_gate(State(1), Gate::rx(0), M_PI);
  EXPECT_NEAR(std::abs(s.amplitudes()[0]), 0.0, 1e-15);
  EXPECT_NEAR(s.amplitudes()[1].real(), 0.0, 1e-15);
  EXPECT_NEAR(s.amplitudes()[1].imag(), -1.0, 1e-15);
  EXPECT_NEAR(expectation(s, DiagonalEnergy{1, {1.0, -1.0}}), -1.0, 1e-15);
}

TEST(Statevector, RzKeepsProbabilities) {
  for (double t : {0.1, 1.0, 2.5, -4.0}) {
    const State s = apply_gate(apply_gate(State(1), Gate::h(0)), Gate::rz(0), t);
    EXPECT_NEAR(std::norm(s.amplitudes()[0]), 0.5, 1e-15);
    EXPECT_NEAR(std::norm(s.amplitudes()[1]), 0.5, 1e-15);
  }
}

TEST(Statevector, EmptyCircuitIsZeroState) {
  const State s = run_circuit(Circuit(3));
  EXPECT_EQ(s.amplitudes()[0], Amplitude(1.0));
  for (std::size_t i = 1; i < 8; ++i) EXPECT_EQ(s.amplitudes()[i], Amplitude(0.0));
}

TEST(Statevector, BellState) {
  const State s = run_circuit(CircuitBuilder(2).h(0).cnot(0, 1).build());
  EXPECT_NEAR(s.amplitudes()[0].real(), 1 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(s.amplitudes()[3].real(), 1 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(std::abs(s.amplitudes()[1]) + std::abs(s.amplitudes()[2]), 0.0, 1e-15);
}

TEST(Statevector, MatchesDenseMatrixOracle) {
  RngStream rng(101);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 1 + static_cast<int>(rng.index(4));
    const Circuit c = oracle::random_circuit(n, 1 + rng.index(15), rng);
    const State s = run_circuit(c);
    const oracle::Vector ref = oracle::simulate(c);
    for (std::size_t i = 0; i < ref.size(); ++i) ASSERT_NEAR(std::abs(s.amplitudes()[i] - ref[i]), 0.0, 1e-12);
  }
}

TEST(Statevector, NormPreserved) {
  RngStream rng(5);
  State s(5);
  for (int k = 0; k < 500; ++k) {
    const Circuit g = oracle::random_circuit(5, 1, rng);
    s.apply(g.gates()[0], g.gates()[0].param_slot ? std::optional(g.params()[0]) : std::nullopt);
    ASSERT_NEAR(s.norm_squared(), 1.0, 1e-10);
  }
}

TEST(Statevector, GateThenInverseIsIdentity) {
  RngStream rng(8);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 1 + static_cast<int>(rng.index(4));
    const State start = run_circuit(oracle::random_circuit(n, 6, rng));
    const Circuit forward = oracle::random_circuit(n, 1, rng);
    const Circuit backward = inverse(forward);
    State s = start;
    for (const Circuit* c : {&forward, &backward}) {
      const Gate& g = c->gates()[0];
      s.apply(g, g.param_slot ? std::optional(c->angle(g)) : std::nullopt);
    }
    for (std::size_t i = 0; i < s.dimension(); ++i) {
      ASSERT_NEAR(std::abs(s.amplitudes()[i] - start.amplitudes()[i]), 0.0, 1e-10);
    }
  }
}

TEST(Statevector, CircuitThenInverseReturnsToZero) {
  RngStream rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + static_cast<int>(rng.index(6));
    const Circuit c = oracle::random_circuit(n, 25, rng);
    CircuitBuilder both(n);
    const Circuit back = inverse(c);
    for (const Circuit* src : {&c, &back}) {
      for (const Gate& g : src->gates()) both.add(g, src->angle(g));
    }
    const State s = run_circuit(both.build());
    ASSERT_NEAR(std::abs(s.amplitudes()[0] - Amplitude(1.0)), 0.0, 1e-10);
  }
}

TEST(Statevector, StarEnergies) {
  const IsingModel m = star(4);
  const DiagonalEnergy e = to_diagonal(m);
  EXPECT_NEAR(expectation(State(4), e), 0.0, 1e-12);
  EXPECT_NEAR(expectation(State::basis(4, parse_bitstring("1000")), e), -3.0, 1e-12);
}

TEST(Statevector, UniformSuperpositionIsMinusHalfEdges) {
  for (auto kind : {ProblemKind::MaxCutER, ProblemKind::MaxCutStar}) {
    for (int n : {3, 5, 8}) {
      ProblemSpec s;
      s.kind = kind;
      s.n = n;
      s.seed = 4;
      const QuboInstance q = generate(s);
      CircuitBuilder b(n);
      for (int k = 0; k < n; ++k) b.h(k);
      const double e = expectation(run_circuit(b.build()), to_diagonal(qubo_to_ising(q)));
      EXPECT_NEAR(e, -static_cast<double>(q.edges.size()) / 2.0, 1e-12);
    }
  }
}

TEST(Statevector, BasisPreparationMatchesOracle) {
  const IsingModel m = star(5);
  const DiagonalEnergy e = to_diagonal(m);
  for (std::uint64_t b = 0; b < 32; ++b) {
    CircuitBuilder cb(5);
    for (int q = 0; q < 5; ++q) {
      if ((b >> q) & 1U) cb.rx(q, M_PI);
    }
    EXPECT_NEAR(expectation(run_circuit(cb.build()), e), ising_energy(m, b), 1e-9);
  }
}

TEST(Statevector, MixtureLinearity) {
  const DiagonalEnergy e{2, {1.0, -2.0, 0.5, 3.0}};
  const State s = run_circuit(CircuitBuilder(2).ry(0, 0.7).ry(1, 1.9).build());
  double manual = 0;
  for (std::size_t i = 0; i < 4; ++i) manual += std::norm(s.amplitudes()[i]) * e.energies[i];
  EXPECT_NEAR(expectation(s, e), manual, 1e-14);
}

TEST(Statevector, Errors) {
  EXPECT_THROW(State(0), CapacityError);
  EXPECT_THROW(State(kMaxSimQubits + 1), CapacityError);
  State s(2);
  EXPECT_THROW(s.apply(Gate::h(2)), StructuralError);
  EXPECT_THROW(expectation(s, DiagonalEnergy{3, std::vector<double>(8, 0.0)}), StructuralError);
}
