#include <gtest/gtest.h>

#include <cmath>

#include "avqa/algorithms.hpp"
#include "avqa/hypertune.hpp"

using namespace avqa;
using namespace avqa::hypertune;

namespace {

TrialOutcome quadratic(const ParamConfig& c) {
  const double v = as_double(c.at("v"));
  return {(v - 3) * (v - 3), 1};
}

}  // namespace

TEST(Hypertune, DomainsValidate) {
  EXPECT_THROW(ParamDomain::continuous("x", 1.0, 1.0), std::invalid_argument);
  EXPECT_THROW(ParamDomain::integer("x", 3, 2), std::invalid_argument);
  EXPECT_THROW(ParamDomain::categorical("x", {}), std::invalid_argument);
  const ParamDomain d = ParamDomain::integer("p", 1, 10);
  EXPECT_TRUE(d.contains(Value{std::int64_t{10}}));
  EXPECT_FALSE(d.contains(Value{std::int64_t{11}}));
  EXPECT_FALSE(d.contains(Value{2.0}));
}

TEST(Hypertune, StartupCount) {
  EXPECT_EQ(startup_trials(1), 5U);
  EXPECT_EQ(startup_trials(50), 10U);
  EXPECT_EQ(startup_trials(100), 20U);
}

TEST(Hypertune, FindsQuadraticMinimum) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    SearchOptions o;
    o.seed = seed;
    const SearchResult r = search({ParamDomain::continuous("v", 0, 10)}, quadratic, o);
    EXPECT_NEAR(as_double(r.best.at("v")), 3.0, 0.5) << "seed " << seed;
    EXPECT_EQ(r.trials.size(), 50U);
  }
}

TEST(Hypertune, SingleTrial) {
  SearchOptions o;
  o.n_trials = 1;
  const SearchResult r = search({ParamDomain::continuous("v", 0, 10)}, quadratic, o);
  ASSERT_EQ(r.trials.size(), 1U);
  EXPECT_EQ(r.best, r.trials[0].config);
}

TEST(Hypertune, BestIsMinimumAndValuesInDomain) {
  const std::vector<ParamDomain> space{ParamDomain::continuous("x", -1, 1), ParamDomain::integer("k", 1, 4),
                                       ParamDomain::categorical("c", {"a", "b", "c"})};
  auto obj = [](const ParamConfig& c) {
    const double x = as_double(c.at("x"));
    const double k = static_cast<double>(as_int(c.at("k")));
    const double pen = as_string(c.at("c")) == "b" ? 0.0 : 1.0;
    return TrialOutcome{x * x + (k - 2) * (k - 2) + pen, 1};
  };
  SearchOptions o;
  o.seed = 3;
  o.n_trials = 60;
  const SearchResult r = search(space, obj, o);
  double lowest = INFINITY;
  for (const TrialRecord& t : r.trials) {
    lowest = std::min(lowest, t.loss);
    for (const ParamDomain& d : space) EXPECT_TRUE(d.contains(t.config.at(d.name)));
  }
  EXPECT_NEAR(r.best_loss, lowest, kLossTieTolerance * std::max(1.0, std::abs(lowest)));
  EXPECT_EQ(as_string(r.best.at("c")), "b");
  EXPECT_EQ(as_int(r.best.at("k")), 2);
}

TEST(Hypertune, FixedSeedReproduces) {
  SearchOptions o;
  o.seed = 12;
  const SearchResult a = search({ParamDomain::continuous("v", 0, 10)}, quadratic, o);
  const SearchResult b = search({ParamDomain::continuous("v", 0, 10)}, quadratic, o);
  ASSERT_EQ(a.trials.size(), b.trials.size());
  for (std::size_t i = 0; i < a.trials.size(); ++i) EXPECT_EQ(a.trials[i].config, b.trials[i].config);
}

TEST(Hypertune, FailingTrialsRecordInfinity) {
  int calls = 0;
  auto obj = [&](const ParamConfig& c) {
    if (++calls % 2 == 0) throw std::runtime_error("boom");
    return quadratic(c);
  };
  SearchOptions o;
  o.n_trials = 12;
  const SearchResult r = search({ParamDomain::continuous("v", 0, 10)}, obj, o);
  EXPECT_EQ(r.trials.size(), 12U);
  EXPECT_TRUE(std::isinf(r.trials[1].loss));
  EXPECT_TRUE(std::isfinite(r.best_loss));
}

TEST(Hypertune, TimeLimitStopsEarly) {
  SearchOptions o;
  o.n_trials = 1000;
  o.time_limit = 0.0;
  const SearchResult r = search({ParamDomain::continuous("v", 0, 10)}, quadratic, o);
  EXPECT_EQ(r.trials.size(), 1U);
}

TEST(Hypertune, RandomStrategy) {
  SearchOptions o;
  o.strategy = Strategy::Random;
  o.n_trials = 200;
  const SearchResult r = search({ParamDomain::continuous("v", 0, 10)}, quadratic, o);
  EXPECT_LT(r.best_loss, 0.05);
}

TEST(Hypertune, TiesPreferCheaperTrials) {
  TrialRecord cheap{{}, -2.0, 0.0, 100};
  TrialRecord costly{{}, -2.0 - 1e-9, 0.0, 900};
  EXPECT_TRUE(improves(cheap, costly));
  EXPECT_FALSE(improves(costly, cheap));
  TrialRecord better{{}, -2.1, 0.0, 5000};
  EXPECT_TRUE(improves(better, cheap));
}

TEST(Hypertune, AlgorithmSpacesCoverDefaults) {
  for (Algorithm a : all_algorithms()) {
    const auto space = search_space(a);
    for (int n : {4, 8, 12, 15}) {
      const ParamConfig d = default_hyperparameters(a, n);
      EXPECT_EQ(d.size(), space.size()) << to_string(a);
      for (const ParamDomain& dom : space) {
        ASSERT_TRUE(d.contains(dom.name)) << dom.name;
        EXPECT_TRUE(dom.contains(d.at(dom.name))) << to_string(a) << " " << dom.name;
      }
    }
  }
}

TEST(Hypertune, TuneQaoaDepth) {
  TuneOptions o;
  o.n = 4;
  o.n_trials = 12;
  const SearchResult r = tune(Algorithm::QAOA, o);
  EXPECT_EQ(r.trials.size(), 12U);
  const auto p = as_int(r.best.at("p"));
  EXPECT_GE(p, 1);
  EXPECT_LE(p, 10);
}
