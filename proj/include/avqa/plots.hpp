#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace avqa::plots {

struct PlotSpec {
  std::string metric = "ratio";  // ratio | gates | cnot | evals
  std::filesystem::path input;   // summary.csv
  std::filesystem::path output;  // .svg
};

/// Header-keyed rows of a comma-separated file without quoting.
struct Table {
  std::vector<std::string> header;
  std::vector<std::map<std::string, std::string>> rows;
};
Table parse_csv(const std::string& text);

struct Bar {
  std::string group;  // e.g. "MaxCutER N=8"
  std::string series; // algorithm
  double value = 0.0;
  double error = 0.0;
};

/// Extracts bars for a metric; throws std::invalid_argument for an unknown
/// metric or one missing from the table.
std::vector<Bar> bars_for(const Table& t, const std::string& metric);

/// Grouped bar chart; error bars drawn only where error > 0.
std::string render_svg(const std::vector<Bar>& bars, const std::string& title);

void render(const PlotSpec& spec);

}  // namespace avqa::plots
