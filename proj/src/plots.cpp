#include "avqa/plots.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>

#include "avqa/io.hpp"

namespace avqa::plots {

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

struct MetricColumns {
  const char* value;
  const char* error;
};

MetricColumns columns_for(const std::string& metric) {
  if (metric == "ratio") return {"ratio_mean", "ratio_std"};
  if (metric == "gates") return {"gates", "gates_std"};
  if (metric == "cnot") return {"cnot", "cnot_std"};
  if (metric == "evals") return {"evals_mean", "evals_std"};
  throw std::invalid_argument("unknown metric '" + metric + "' (expected ratio, gates, cnot or evals)");
}

constexpr const char* kPalette[] = {"#4c72b0", "#dd8452", "#55a868", "#c44e52",
                                    "#8172b3", "#937860", "#da8bc3", "#8c8c8c"};

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

double nice_ceiling(double v) {
  if (v <= 0.0) return 1.0;
  const double mag = std::pow(10.0, std::floor(std::log10(v)));
  for (double step : {1.0, 2.0, 2.5, 5.0, 10.0}) {
    if (step * mag >= v) return step * mag;
  }
  return 10.0 * mag;
}

}  // namespace

Table parse_csv(const std::string& text) {
  Table t;
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("empty summary file");
  t.header = split(line);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = split(line);
    if (cells.size() != t.header.size()) throw std::invalid_argument("ragged row in summary: " + line);
    std::map<std::string, std::string> row;
    for (std::size_t k = 0; k < cells.size(); ++k) row[t.header[k]] = cells[k];
    t.rows.push_back(std::move(row));
  }
  return t;
}

std::vector<Bar> bars_for(const Table& t, const std::string& metric) {
  const MetricColumns cols = columns_for(metric);
  const auto has = [&](const char* c) { return std::find(t.header.begin(), t.header.end(), c) != t.header.end(); };
  if (!has(cols.value)) {
    throw std::invalid_argument(fmt::format("summary has no column '{}' for metric '{}'", cols.value, metric));
  }
  std::vector<Bar> bars;
  for (const auto& row : t.rows) {
    Bar b;
    const auto kind = row.find("kind");
    const auto n = row.find("n");
    b.group = fmt::format("{} N={}", kind != row.end() ? kind->second : std::string("?"),
                          n != row.end() ? n->second : std::string("?"));
    const auto alg = row.find("algorithm");
    b.series = alg != row.end() ? alg->second : std::string("?");
    b.value = std::stod(row.at(cols.value));
    if (has(cols.error) && !row.at(cols.error).empty()) b.error = std::stod(row.at(cols.error));
    if (!std::isfinite(b.error)) b.error = 0.0;
    bars.push_back(std::move(b));
  }
  return bars;
}

std::string render_svg(const std::vector<Bar>& bars, const std::string& title) {
  std::vector<std::string> groups;
  std::vector<std::string> series;
  for (const Bar& b : bars) {
    if (std::find(groups.begin(), groups.end(), b.group) == groups.end()) groups.push_back(b.group);
    if (std::find(series.begin(), series.end(), b.series) == series.end()) series.push_back(b.series);
  }

  double top = 0.0;
  for (const Bar& b : bars) top = std::max(top, b.value + b.error);
  top = nice_ceiling(top);

  constexpr double kLeft = 70, kRight = 150, kTop = 40, kBottom = 60, kBarWidth = 22, kGap = 24, kHeight = 300;
  const double group_width = static_cast<double>(std::max<std::size_t>(series.size(), 1)) * kBarWidth;
  const double plot_width = std::max(200.0, static_cast<double>(groups.size()) * (group_width + kGap) + kGap);
  const double width = kLeft + plot_width + kRight;
  const double height = kTop + kHeight + kBottom;
  const auto y_of = [&](double v) { return kTop + kHeight * (1.0 - v / top); };

  std::string svg = fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{:.0f}\" height=\"{:.0f}\" "
      "viewBox=\"0 0 {:.0f} {:.0f}\" font-family=\"sans-serif\" font-size=\"12\">\n",
      width, height, width, height);
  svg += fmt::format("<rect width=\"{:.0f}\" height=\"{:.0f}\" fill=\"white\"/>\n", width, height);
  svg += fmt::format("<text x=\"{:.1f}\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">{}</text>\n",
                     kLeft + plot_width / 2, escape(title));

  for (int tick = 0; tick <= 5; ++tick) {
    const double v = top * tick / 5.0;
    const double y = y_of(v);
    svg += fmt::format("<line x1=\"{:.1f}\" y1=\"{:.1f}\" x2=\"{:.1f}\" y2=\"{:.1f}\" stroke=\"#dddddd\"/>\n",
                       kLeft, y, kLeft + plot_width, y);
    svg += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"end\">{:g}</text>\n", kLeft - 6, y + 4, v);
  }
  svg += fmt::format("<line x1=\"{0:.1f}\" y1=\"{1:.1f}\" x2=\"{0:.1f}\" y2=\"{2:.1f}\" stroke=\"black\"/>\n",
                     kLeft, kTop, kTop + kHeight);
  svg += fmt::format("<line x1=\"{0:.1f}\" y1=\"{1:.1f}\" x2=\"{2:.1f}\" y2=\"{1:.1f}\" stroke=\"black\"/>\n",
                     kLeft, kTop + kHeight, kLeft + plot_width);

  for (std::size_t g = 0; g < groups.size(); ++g) {
    const double x0 = kLeft + kGap + static_cast<double>(g) * (group_width + kGap);
    svg += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"middle\">{}</text>\n",
                       x0 + group_width / 2, kTop + kHeight + 20, escape(groups[g]));
    for (const Bar& b : bars) {
      if (b.group != groups[g]) continue;
      const auto s = static_cast<std::size_t>(std::find(series.begin(), series.end(), b.series) - series.begin());
      const double x = x0 + static_cast<double>(s) * kBarWidth;
      const double y = y_of(std::max(0.0, b.value));
      svg += fmt::format("<rect x=\"{:.1f}\" y=\"{:.1f}\" width=\"{:.1f}\" height=\"{:.1f}\" fill=\"{}\">"
                         "<title>{} {}: {:g}</title></rect>\n",
                         x + 1, y, kBarWidth - 2, kTop + kHeight - y, kPalette[s % std::size(kPalette)],
                         escape(b.group), escape(b.series), b.value);
      if (b.error > 0.0) {
        const double cx = x + kBarWidth / 2;
        const double lo = y_of(std::max(0.0, b.value - b.error));
        const double hi = y_of(b.value + b.error);
        svg += fmt::format("<line x1=\"{0:.1f}\" y1=\"{1:.1f}\" x2=\"{0:.1f}\" y2=\"{2:.1f}\" stroke=\"black\"/>\n",
                           cx, lo, hi);
        svg += fmt::format("<line x1=\"{0:.1f}\" y1=\"{2:.1f}\" x2=\"{1:.1f}\" y2=\"{2:.1f}\" stroke=\"black\"/>\n",
                           cx - 4, cx + 4, hi);
        svg += fmt::format("<line x1=\"{0:.1f}\" y1=\"{2:.1f}\" x2=\"{1:.1f}\" y2=\"{2:.1f}\" stroke=\"black\"/>\n",
                           cx - 4, cx + 4, lo);
      }
    }
  }

  for (std::size_t s = 0; s < series.size(); ++s) {
    const double y = kTop + 10 + static_cast<double>(s) * 20;
    const double x = kLeft + plot_width + 20;
    svg += fmt::format("<rect x=\"{:.1f}\" y=\"{:.1f}\" width=\"12\" height=\"12\" fill=\"{}\"/>\n", x, y,
                       kPalette[s % std::size(kPalette)]);
    svg += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\">{}</text>\n", x + 18, y + 10, escape(series[s]));
  }
  svg += "</svg>\n";
  return svg;
}

void render(const PlotSpec& spec) {
  std::ifstream in(spec.input);
  if (!in) throw std::runtime_error("cannot open " + spec.input.string());
  std::stringstream buf;
  buf << in.rdbuf();
  const Table t = parse_csv(buf.str());
  io::write_text(spec.output, render_svg(bars_for(t, spec.metric), spec.metric));
}

}  // namespace avqa::plots
