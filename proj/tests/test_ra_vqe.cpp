#include <gtest/gtest.h>

#include "avqa/problems.hpp"
#include "avqa/ra_vqe.hpp"
#include "avqa/statevector.hpp"

using namespace avqa;

namespace {

IsingModel model(ProblemKind kind, int n, std::uint64_t seed = 0) {
  ProblemSpec s;
  s.kind = kind;
  s.n = n;
  s.seed = seed;
  return qubo_to_ising(generate(s));
}

}  // namespace

TEST(InitialLayer, Shapes) {
  const GateCounts sa = count_gates(initial_layer(InitialLayer::SA, 4));
  EXPECT_EQ(sa.total, 4U);
  EXPECT_EQ(sa.cnot, 0U);
  EXPECT_EQ(initial_layer(InitialLayer::SA, 4).params().size(), 4U);
  const GateCounts hea = count_gates(initial_layer(InitialLayer::HEA, 4));
  EXPECT_EQ(hea.total, 11U);
  EXPECT_EQ(hea.cnot, 3U);
  EXPECT_EQ(initial_layer(InitialLayer::HEA, 4).params().size(), 8U);
}

TEST(InitialLayer, ZeroAnglesGiveZeroState) {
  for (InitialLayer k : {InitialLayer::SA, InitialLayer::HEA}) {
    const State s = run_circuit(initial_layer(k, 5));
    EXPECT_NEAR(std::abs(s.amplitudes()[0] - Amplitude(1.0)), 0.0, 1e-15);
  }
  EXPECT_EQ(initial_layer_from_string("HEA"), InitialLayer::HEA);
  EXPECT_THROW(initial_layer_from_string("XYZ"), std::invalid_argument);
}

TEST(RaVqe, AppendedGatesComeFromPool) {
  RngStream rng(1);
  Circuit c(4);
  for (int k = 0; k < 500; ++k) {
    c = ra_vqe::append_random_gate(c, rng);
    const Gate& g = c.gates().back();
    EXPECT_NE(g.kind, GateKind::H);
    if (g.kind == GateKind::CNOT) EXPECT_NE(g.control(), g.target());
    EXPECT_EQ(c.angle(g), 0.0);
  }
}

TEST(RaVqe, StarN4Solved) {
  double sum = 0;
  for (int i = 0; i < 10; ++i) {
    BudgetLedger ledger;
    ra_vqe::Config cfg;
    cfg.seed = static_cast<std::uint64_t>(i);
    const AlgorithmResult r = ra_vqe::run(model(ProblemKind::MaxCutStar, 4), cfg, ledger);
    sum += *r.approximation_ratio;
    EXPECT_LE(r.evals_used, 10000U);
    EXPECT_LE(r.max_structure_evals, 50U);
  }
  EXPECT_NEAR(sum / 10, 1.0, 0.01);
}

TEST(RaVqe, BestIsSmallerThanExplored) {
  BudgetLedger ledger;
  ra_vqe::Config cfg;
  cfg.seed = 3;
  const AlgorithmResult r = ra_vqe::run(model(ProblemKind::MaxCutER, 8, 1), cfg, ledger);
  EXPECT_LT(r.gates * 2, r.max_gates_explored);
  EXPECT_EQ(ledger.used(), 10000U);
}

TEST(RaVqe, TinyBudgetOneRound) {
  BudgetLedger ledger(50, 50);
  ra_vqe::Config cfg;
  const AlgorithmResult r = ra_vqe::run(model(ProblemKind::MaxCutER, 6, 2), cfg, ledger);
  EXPECT_EQ(r.structures, 1U);
  EXPECT_EQ(r.evals_used, 50U);
}

TEST(RaVqe, Reproducible) {
  ra_vqe::Config cfg;
  cfg.seed = 11;
  BudgetLedger l1(2000, 50), l2(2000, 50);
  const AlgorithmResult a = ra_vqe::run(model(ProblemKind::NumberPartitioning, 5, 1), cfg, l1);
  const AlgorithmResult b = ra_vqe::run(model(ProblemKind::NumberPartitioning, 5, 1), cfg, l2);
  EXPECT_EQ(a.expectation, b.expectation);
  EXPECT_EQ(a.best_circuit, b.best_circuit);
}
