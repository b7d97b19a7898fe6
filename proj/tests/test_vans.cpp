#include <gtest/gtest.h>

#include <cmath>

#include "avqa/problems.hpp"
#include "avqa/statevector.hpp"
#include "avqa/vans.hpp"
#include "oracle.hpp"

using namespace avqa;
using namespace avqa::vans;

namespace {

IsingModel model(ProblemKind kind, int n, std::uint64_t seed = 0) {
  ProblemSpec s;
  s.kind = kind;
  s.n = n;
  s.seed = seed;
  return qubo_to_ising(generate(s));
}

double phase_free_fidelity(const Circuit& a, const Circuit& b) { return fidelity(run_circuit(a), run_circuit(b)); }

/// Random circuit over the simplification-relevant gates with some exact repeats.
Circuit random_rewrite_target(int n, std::size_t gates, RngStream& rng) {
  CircuitBuilder b(n);
  const double special[] = {0.0, M_PI, 2 * M_PI, -2 * M_PI};
  for (std::size_t k = 0; k < gates; ++k) {
    const int q = static_cast<int>(rng.index(static_cast<std::size_t>(n)));
    const double a = rng.bernoulli(0.2) ? special[rng.index(4)] : rng.uniform(-M_PI, M_PI);
    switch (rng.index(n >= 2 ? 5 : 4)) {
      case 0: b.h(q); break;
      case 1: b.rx(q, a); break;
      case 2: b.ry(q, a); break;
      case 3: b.rz(q, a); break;
      default: {
        int t = static_cast<int>(rng.index(static_cast<std::size_t>(n - 1)));
        if (t >= q) ++t;
        b.cnot(q, t);
        if (rng.bernoulli(0.3)) b.rz(q, a);
        if (rng.bernoulli(0.3)) b.rx(t, a);
        if (rng.bernoulli(0.5)) b.cnot(q, t);
      }
    }
  }
  return b.build();
}

}  // namespace

TEST(Vans, BlockCountZeroScale) {
  RngStream rng(1);
  for (int k = 0; k < 100; ++k) EXPECT_EQ(sample_block_count(0.0, rng), 1U);
}

TEST(Vans, BlockCountMean) {
  RngStream rng(2);
  double sum = 0;
  const int n = 100000;
  for (int k = 0; k < n; ++k) sum += static_cast<double>(sample_block_count(1.137, rng));
  // E[1 + floor(X)] for X ~ Exp(mean m) is 1 + 1 / (e^{1/m} - 1).
  EXPECT_NEAR(sum / n, 1.0 + 1.0 / (std::exp(1.0 / 1.137) - 1.0), 0.01);
}

TEST(Vans, QubitWeights) {
  const auto uniform = qubit_weights({3, 3, 3, 3}, 5.0);
  for (double w : uniform) EXPECT_NEAR(w, 0.25, 1e-15);
  const auto skewed = qubit_weights({0, 10}, 1.0);
  EXPECT_NEAR(skewed[0], 1.0 / (1.0 + std::exp(-10.0)), 1e-12);
}

TEST(Vans, ZeroAngleBlocksAreIdentity) {
  RngStream rng(3);
  Config cfg;
  cfg.scale = 1.2;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + static_cast<int>(rng.index(4));
    const Circuit c = oracle::random_circuit(n, 8, rng);
    const Circuit d = append_blocks(c, sample_insertion(c, cfg, rng));
    const auto a = run_circuit(c).amplitudes();
    const auto b = run_circuit(d).amplitudes();
    for (std::size_t i = 0; i < a.size(); ++i) ASSERT_EQ(a[i], b[i]);
  }
}

TEST(Vans, BlockShapes) {
  const Circuit c = append_blocks(Circuit(3), {{BlockKind::Single, 1, -1}, {BlockKind::Pair, 0, 2}});
  ASSERT_EQ(c.size(), 7U);
  EXPECT_EQ(c.gates()[0].kind, GateKind::RZ);
  EXPECT_EQ(c.gates()[1].kind, GateKind::RX);
  EXPECT_EQ(c.gates()[2].kind, GateKind::RZ);
  EXPECT_EQ(c.gates()[3], Gate::cnot(0, 2));
  EXPECT_EQ(c.gates()[6], Gate::cnot(0, 2));
}

TEST(Vans, CnotPairCancels) {
  EXPECT_TRUE(simplify_algebraic(CircuitBuilder(2).h(0).h(1).cnot(0, 1).cnot(0, 1).build()).size() == 2);
}

TEST(Vans, RotationsMerge) {
  const Circuit c = simplify_algebraic(CircuitBuilder(1).h(0).rz(0, 0.3).rz(0, 0.5).build());
  ASSERT_EQ(c.size(), 2U);
  EXPECT_NEAR(c.params()[0], 0.8, 1e-15);
}

TEST(Vans, RzCommutesThroughControl) {
  const Circuit in = CircuitBuilder(2).h(0).h(1).cnot(0, 1).rz(0, 0.3).cnot(0, 1).build();
  const Circuit out = simplify_algebraic(in);
  ASSERT_EQ(out.size(), 3U);
  EXPECT_EQ(out.gates()[2].kind, GateKind::RZ);
  EXPECT_NEAR(phase_free_fidelity(in, out), 1.0, 1e-12);
}

TEST(Vans, FreshQubitRules) {
  EXPECT_TRUE(simplify_algebraic(CircuitBuilder(2).rz(0, 0.7).cnot(0, 1).build()).empty());
  const Circuit c = simplify_algebraic(CircuitBuilder(2).rx(1, 0.7).cnot(0, 1).build());
  EXPECT_EQ(c.size(), 1U);
}

TEST(Vans, ZeroRotationsDropped) {
  EXPECT_TRUE(simplify_algebraic(CircuitBuilder(1).rx(0, 2 * M_PI).ry(0, 0.0).build()).empty());
}

TEST(Vans, SimplificationPreservesState) {
  RngStream rng(44);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 1 + static_cast<int>(rng.index(6));
    const Circuit c = random_rewrite_target(n, rng.index(31), rng);
    const Circuit s = simplify_algebraic(c);
    EXPECT_LE(s.size(), c.size());
    ASSERT_GE(phase_free_fidelity(c, s), 1.0 - 1e-9) << "trial " << trial;
    EXPECT_EQ(simplify_algebraic(s), s);
  }
}

TEST(Vans, SimplifiesInsertedBlocksToNothing) {
  RngStream rng(7);
  Config cfg;
  const Circuit base = CircuitBuilder(3).ry(0, 0.4).ry(1, 1.0).ry(2, -0.3).build();
  const Circuit grown = append_blocks(base, sample_insertion(base, cfg, rng));
  EXPECT_EQ(simplify_algebraic(grown), base);
}

TEST(Vans, CostSimplificationDropsNeutralGate) {
  const DiagonalEnergy e = to_diagonal(model(ProblemKind::MaxCutStar, 3));
  const Circuit c = CircuitBuilder(3).ry(0, M_PI).rz(1, 0.4).build();
  BudgetLedger ledger;
  const double full = *charged_expectation(c, e, ledger);
  const CostSimplification r = simplify_cost(c, e, 1e12, ledger, full);
  EXPECT_EQ(r.removed, 1U);
  EXPECT_EQ(r.circuit.size(), 1U);
  EXPECT_EQ(r.circuit.gates()[0].kind, GateKind::RY);
}

TEST(Vans, CostSimplificationStrictLimit) {
  const DiagonalEnergy e = to_diagonal(model(ProblemKind::MaxCutStar, 3));
  const Circuit c = CircuitBuilder(3).ry(0, M_PI - 0.2).ry(1, 0.3).build();
  BudgetLedger ledger;
  const double full = *charged_expectation(c, e, ledger);
  const CostSimplification r = simplify_cost(c, e, std::numeric_limits<double>::infinity(), ledger, full);
  EXPECT_LE(r.expectation, full);
  EXPECT_EQ(r.circuit.size(), 1U);  // dropping the small RY on a leaf improves the cut
}

TEST(Vans, PermissiveThresholdCanEmptyCircuit) {
  const DiagonalEnergy e = to_diagonal(model(ProblemKind::MaxCutER, 2, 0));
  const Circuit c = CircuitBuilder(2).ry(0, M_PI).build();
  BudgetLedger ledger;
  const double full = *charged_expectation(c, e, ledger);
  const CostSimplification r = simplify_cost(c, e, 0.5, ledger, full);
  EXPECT_TRUE(r.circuit.empty());
}

TEST(Vans, CostSimplificationStopsOnBudget) {
  const DiagonalEnergy e = to_diagonal(model(ProblemKind::MaxCutStar, 3));
  const Circuit c = CircuitBuilder(3).ry(0, 1.0).ry(1, 1.0).ry(2, 1.0).build();
  BudgetLedger ledger(2, 50);
  const CostSimplification r = simplify_cost(c, e, 50, ledger, 0.0);
  EXPECT_TRUE(r.budget_exhausted);
  EXPECT_EQ(r.circuit, c);
  EXPECT_EQ(ledger.used(), 2U);
}

TEST(Vans, WallSchedule) {
  Config cfg;
  cfg.min_randomness = 40;
  cfg.max_randomness = 60;
  cfg.n_iterations = 50;
  cfg.decrease_to = 5;
  EXPECT_EQ(accept_wall_schedule(cfg, 0), 60.0);
  EXPECT_EQ(accept_wall_schedule(cfg, 5), 50.0);
  EXPECT_EQ(accept_wall_schedule(cfg, 10), 40.0);
  EXPECT_EQ(accept_wall_schedule(cfg, 40), 40.0);
}

TEST(Vans, StarN8CompactAndExact) {
  double sum = 0, gates = 0, cnot = 0;
  for (int i = 0; i < 10; ++i) {
    BudgetLedger ledger;
    Config cfg;
    cfg.seed = static_cast<std::uint64_t>(i);
    const AlgorithmResult r = run(model(ProblemKind::MaxCutStar, 8), cfg, ledger);
    sum += *r.approximation_ratio;
    gates += static_cast<double>(r.gates);
    cnot += static_cast<double>(r.cnot);
    EXPECT_LE(r.max_structure_evals, 50U);
  }
  EXPECT_GE(sum / 10, 0.99);
  EXPECT_LE(gates / 10, 8.0);
  EXPECT_EQ(cnot, 0.0);
}

TEST(Vans, ZeroAcceptanceOnlyImproves) {
  Config cfg;
  cfg.accept_perc = 0.0;
  cfg.seed = 4;
  BudgetLedger ledger;
  const AlgorithmResult r = run(model(ProblemKind::MaxCutER, 5, 3), cfg, ledger);
  EXPECT_GE(*r.approximation_ratio, 0.9);
}

TEST(Vans, Reproducible) {
  Config cfg;
  cfg.seed = 8;
  BudgetLedger l1, l2;
  const AlgorithmResult a = run(model(ProblemKind::NumberPartitioning, 5, 1), cfg, l1);
  const AlgorithmResult b = run(model(ProblemKind::NumberPartitioning, 5, 1), cfg, l2);
  EXPECT_EQ(a.expectation, b.expectation);
  EXPECT_EQ(a.best_circuit, b.best_circuit);
}

TEST(Vans, ConfigRanges) {
  Config cfg;
  cfg.temperature = 0.5;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg = Config{};
  cfg.decrease_to = 11;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
}
