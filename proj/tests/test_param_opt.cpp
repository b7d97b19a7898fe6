#include <gtest/gtest.h>

#include <cmath>

#include "avqa/cobyla.hpp"
#include "avqa/param_opt.hpp"
#include "avqa/problems.hpp"
#include "avqa/statevector.hpp"

using namespace avqa;

TEST(Cobyla, ConvexQuadratic) {
  BudgetLedger ledger;
  const OptResult r = minimize(
      [](std::span<const double> x) { return (x[0] - 1) * (x[0] - 1) + (x[1] + 2) * (x[1] + 2); }, {0.0, 0.0},
      ledger, 50);
  EXPECT_NEAR(r.best_params[0], 1.0, 1e-2);
  EXPECT_NEAR(r.best_params[1], -2.0, 1e-2);
  EXPECT_LE(r.evals_used, 50U);
  EXPECT_EQ(ledger.used(), r.evals_used);
}

TEST(Cobyla, ConstantObjective) {
  BudgetLedger ledger;
  const OptResult r = minimize([](std::span<const double>) { return 7.0; }, {0.3, 0.4, 0.5}, ledger, 50);
  EXPECT_EQ(r.best_value, 7.0);
  EXPECT_EQ(r.terminated_by, Termination::Converged);
}

TEST(Cobyla, GlobalCapStopsImmediately) {
  BudgetLedger ledger(3, 50);
  const OptResult r = minimize([](std::span<const double> x) { return x[0] * x[0]; }, {1.0}, ledger, 50);
  EXPECT_EQ(r.terminated_by, Termination::GlobalBudget);
  EXPECT_EQ(ledger.used(), 3U);
  EXPECT_EQ(r.evals_used, 3U);
}

TEST(Cobyla, StructureCap) {
  BudgetLedger ledger;
  const OptResult r = minimize(
      [](std::span<const double> x) {
        double s = 0;
        for (std::size_t i = 0; i < x.size(); ++i) s += std::cos(x[i] * (1 + i)) + 0.1 * x[i] * x[i];
        return s;
      },
      std::vector<double>(6, 0.2), ledger, 20);
  EXPECT_EQ(r.evals_used, 20U);
  EXPECT_EQ(r.terminated_by, Termination::StructureBudget);
}

TEST(Cobyla, EmptyVectorUsesOneEvaluation) {
  BudgetLedger ledger;
  const OptResult r = minimize([](std::span<const double>) { return 2.5; }, {}, ledger, 50);
  EXPECT_EQ(r.evals_used, 1U);
  EXPECT_EQ(r.best_value, 2.5);
}

TEST(Cobyla, ZeroMaxEvalsRejected) {
  BudgetLedger ledger;
  EXPECT_THROW(minimize([](std::span<const double>) { return 0.0; }, {0.0}, ledger, 0), std::invalid_argument);
}

TEST(Cobyla, BestValueIsMinimumSeen) {
  std::vector<double> seen;
  BudgetLedger ledger;
  const OptResult r = minimize(
      [&](std::span<const double> x) {
        const double v = std::sin(3 * x[0]) + std::cos(2 * x[1]) + 0.05 * x[0] * x[1];
        seen.push_back(v);
        return v;
      },
      {0.1, -0.4}, ledger, 40);
  EXPECT_EQ(r.best_value, *std::min_element(seen.begin(), seen.end()));
  EXPECT_EQ(seen.size(), r.evals_used);
  EXPECT_EQ(ledger.used(), seen.size());
}

TEST(Cobyla, RotatedQuadratic) {
  // Condition number 25, axes rotated away from the coordinate directions.
  const CobylaResult r = cobyla_minimize(
      [](std::span<const double> x) -> std::optional<double> {
        const double u = (x[0] + x[1]) / std::sqrt(2.0) - 1.0;
        const double v = (x[0] - x[1]) / std::sqrt(2.0) + 0.5;
        const double w = x[2] + 0.3 * x[3] - 2.0;
        return 25 * u * u + v * v + 4 * w * w + std::pow(x[3] - 1.0, 2);
      },
      {0.0, 0.0, 0.0, 0.0}, 5000);
  EXPECT_EQ(r.stop, CobylaStop::Converged);
  EXPECT_LT(r.best_f, 1e-5);
}

TEST(Ledger, CountsAndRefuses) {
  BudgetLedger l(2, 50);
  EXPECT_TRUE(l.charge());
  EXPECT_TRUE(l.charge());
  EXPECT_FALSE(l.charge());
  EXPECT_EQ(l.used(), 2U);
  EXPECT_TRUE(l.exhausted());
  l.record_structure(30);
  l.record_structure(12);
  EXPECT_EQ(l.structures(), 2U);
  EXPECT_EQ(l.max_structure_evals(), 30U);
}

TEST(OptimizeCircuit, SingleRxAgainstZ) {
  BudgetLedger ledger;
  const Circuit c = CircuitBuilder(1).rx(0, 0.0).build();
  const OptResult r = optimize_circuit(c, DiagonalEnergy{1, {1.0, -1.0}}, ledger, 50);
  EXPECT_NEAR(r.best_value, -1.0, 1e-2);
  EXPECT_NEAR(std::cos(r.best_params[0]), -1.0, 1e-2);
}

TEST(OptimizeCircuit, ParameterFreeBell) {
  BudgetLedger ledger;
  const Circuit c = CircuitBuilder(2).h(0).cnot(0, 1).build();
  const DiagonalEnergy e{2, {1.0, 2.0, 3.0, 5.0}};
  const OptResult r = optimize_circuit(c, e, ledger, 50);
  EXPECT_EQ(r.evals_used, 1U);
  EXPECT_NEAR(r.best_value, 3.0, 1e-12);
}

TEST(OptimizeCircuit, SeparableRyReachesStarGround) {
  ProblemSpec s;
  s.kind = ProblemKind::MaxCutStar;
  s.n = 4;
  const DiagonalEnergy e = to_diagonal(qubo_to_ising(generate(s)));
  const Circuit c = CircuitBuilder(4).ry(0, 0.1).ry(1, 0.1).ry(2, 0.1).ry(3, 0.1).build();
  BudgetLedger ledger;
  const OptResult r = optimize_circuit(c, e, ledger, 400);
  EXPECT_NEAR(r.best_value, -3.0, 1e-2);
}

TEST(OptimizeCircuit, InactiveSlotsBitIdentical) {
  const Circuit c = CircuitBuilder(2).rx(0, 0.123456789).ry(1, -2.5).rz(0, 1e-17).rx(1, 0.3).build();
  BudgetLedger ledger;
  const OptResult r = optimize_circuit(c, DiagonalEnergy{2, {0.5, -1.0, 2.0, -0.25}}, ledger, 50,
                                       std::vector<std::size_t>{1, 3});
  ASSERT_EQ(r.best_params.size(), 4U);
  EXPECT_EQ(r.best_params[0], 0.123456789);
  EXPECT_EQ(r.best_params[2], 1e-17);
}

TEST(OptimizeCircuit, ChargedExpectationStopsAtCap) {
  BudgetLedger ledger(1, 50);
  const Circuit c = CircuitBuilder(1).h(0).build();
  EXPECT_TRUE(charged_expectation(c, DiagonalEnergy{1, {1.0, -1.0}}, ledger).has_value());
  EXPECT_FALSE(charged_expectation(c, DiagonalEnergy{1, {1.0, -1.0}}, ledger).has_value());
}
