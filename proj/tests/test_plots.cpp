#include <gtest/gtest.h>

#include "avqa/plots.hpp"

using namespace avqa::plots;

namespace {

const char* kHeader =
    "kind,n,algorithm,runs,failures,undefined_ratio,ratio_mean,ratio_std,expectation_mean,expectation_std,"
    "time_mean,time_std,gates,gates_std,cnot,cnot_std,evals_mean,evals_std\n";

std::size_t count(const std::string& s, const std::string& needle) {
  std::size_t n = 0;
  for (auto p = s.find(needle); p != std::string::npos; p = s.find(needle, p + 1)) ++n;
  return n;
}

}  // namespace

TEST(Plots, SingleRowSingleBarNoErrorBar) {
  const Table t = parse_csv(std::string(kHeader) + "MaxCutER,4,qaoa,1,0,0,0.9,0,-2,0,0.1,0,17,0,6,0,100,0\n");
  const std::string svg = render_svg(bars_for(t, "ratio"), "ratio");
  EXPECT_EQ(count(svg, "<title>"), 1U);
  EXPECT_EQ(count(svg, "stroke=\"black\"/>"), 2U);  // axes only
}

TEST(Plots, SixteenBarsGroupedBySize) {
  std::string csv = kHeader;
  for (int n : {4, 8, 12, 15}) {
    for (const char* a : {"evqe", "qaoa", "ravqe", "vans"}) {
      csv += "MaxCutStar," + std::to_string(n) + "," + a + ",10,0,0,0.98,0.01,-3,0.1,1,0.1,10,2,3,1,500,20\n";
    }
  }
  const auto bars = bars_for(parse_csv(csv), "gates");
  EXPECT_EQ(bars.size(), 16U);
  const std::string svg = render_svg(bars, "gates");
  EXPECT_EQ(count(svg, "<title>"), 16U);
  EXPECT_EQ(count(svg, "MaxCutStar N=12</text>"), 1U);
  EXPECT_EQ(count(svg, "stroke=\"black\"/>"), 2U + 16U * 3U);
}

TEST(Plots, MissingMetricIsDescriptive) {
  const Table t = parse_csv("kind,n,algorithm,ratio_mean\nMaxCutER,4,qaoa,1\n");
  try {
    bars_for(t, "gates");
    FAIL();
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("gates"), std::string::npos);
  }
  EXPECT_THROW(bars_for(t, "depth"), std::invalid_argument);
}

TEST(Plots, Deterministic) {
  const Table t = parse_csv(std::string(kHeader) + "MaxCutER,4,qaoa,2,0,0,0.9,0.05,-2,0,0.1,0,17,1,6,0,100,3\n");
  EXPECT_EQ(render_svg(bars_for(t, "ratio"), "r"), render_svg(bars_for(t, "ratio"), "r"));
}
