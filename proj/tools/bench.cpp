#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "avqa/algorithms.hpp"
#include "avqa/bench.hpp"
#include "avqa/io.hpp"
#include "avqa/plots.hpp"

namespace {

using namespace avqa;

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

int cmd_run(const std::string& config_path, std::string out_dir, std::size_t workers,
            const std::string& algorithms, const std::string& sizes) {
  bench::ExperimentConfig cfg = bench::load_config(config_path);
  bench::apply_env_overrides(cfg);
  if (workers > 0) cfg.workers = workers;
  if (!algorithms.empty()) {
    cfg.algorithms.clear();
    for (const auto& a : split_list(algorithms)) cfg.algorithms.push_back(algorithm_from_string(a));
  }
  if (!sizes.empty()) {
    cfg.sizes.clear();
    for (const auto& n : split_list(sizes)) cfg.sizes.push_back(std::stoi(n));
  }
  if (out_dir.empty()) out_dir = cfg.output_dir;
  cfg.validate();

  const bench::MatrixOutput out = bench::run_matrix(cfg, [](const bench::RunRecord& r) {
    if (r.failed()) {
      std::cerr << fmt::format("FAILED {} {}: {}\n", r.result.instance_id, r.result.algorithm, *r.result.error);
    } else {
      std::cerr << fmt::format("{} {} ratio={} evals={} gates={}\n", r.result.instance_id, r.result.algorithm,
                               r.result.approximation_ratio ? fmt::format("{:.4f}", *r.result.approximation_ratio)
                                                            : std::string("n/a"),
                               r.result.evals_used, r.result.gates);
    }
  });
  bench::write_outputs(out_dir, out);
  std::cout << bench::summary_markdown(bench::summarize(out.runs));
  if (out.failures() > 0) {
    std::cerr << out.failures() << " run(s) failed\n";
    return 1;
  }
  return 0;
}

int cmd_tune(const std::string& algorithm, int n, std::size_t trials, double time_limit,
             std::uint64_t seed, const std::string& strategy, std::string out_dir) {
  const Algorithm a = algorithm_from_string(algorithm);
  TuneOptions opts;
  opts.n = n;
  opts.n_trials = trials;
  opts.time_limit = time_limit > 0 ? time_limit : std::numeric_limits<double>::infinity();
  opts.seed = seed;
  if (strategy == "random") {
    opts.strategy = hypertune::Strategy::Random;
  } else if (strategy != "tpe") {
    throw std::invalid_argument("strategy must be tpe or random");
  }
  if (out_dir.empty()) out_dir = fmt::format("tuning/{}-n{}", to_string(a), n);

  const hypertune::SearchResult r = tune(a, opts);
  std::string log;
  for (const auto& t : r.trials) log += io::to_json(t).dump() + "\n";
  io::write_text(std::filesystem::path(out_dir) / "trials.jsonl", log);
  const io::json best = {{"algorithm", std::string(to_string(a))},
                         {"n", n},
                         {"trials", r.trials.size()},
                         {"loss", r.best_loss},
                         {"config", io::to_json(r.best)}};
  io::write_text(std::filesystem::path(out_dir) / "best.json", best.dump(2) + "\n");
  std::cout << best.dump(2) << "\n";
  return 0;
}

int cmd_summarize(const std::string& in_dir, const std::string& format) {
  const auto rows = bench::summarize(bench::read_results(in_dir));
  if (format == "csv") {
    std::cout << bench::summary_csv(rows);
  } else if (format == "md") {
    std::cout << bench::summary_markdown(rows);
  } else {
    throw std::invalid_argument("format must be md or csv");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Benchmark adaptive variational quantum algorithms and QAOA on QUBO problems"};
  app.require_subcommand(1);

  std::string config_path, out_dir, algorithms, sizes;
  std::size_t workers = 0;
  auto* run = app.add_subcommand("run", "Run an experiment matrix");
  run->add_option("--config", config_path, "Experiment config JSON")->required()->check(CLI::ExistingFile);
  run->add_option("--out", out_dir, "Output directory (defaults to the config's output_dir)");
  run->add_option("--workers", workers, "Parallel workers");
  run->add_option("--algorithms", algorithms, "Comma-separated subset, e.g. evqe,vans,ravqe,qaoa");
  run->add_option("--sizes", sizes, "Comma-separated sizes, e.g. 4,8");

  std::string tune_alg, strategy = "tpe", tune_out;
  int tune_n = 4;
  std::size_t trials = 50;
  double time_limit = 0;
  std::uint64_t tune_seed = 0;
  auto* tune = app.add_subcommand("tune", "Tune an algorithm's hyperparameters");
  tune->add_option("--algorithm", tune_alg, "evqe, vans, ravqe or qaoa")->required();
  tune->add_option("--n", tune_n, "Problem size")->required();
  tune->add_option("--trials", trials, "Number of trials")->check(CLI::PositiveNumber);
  tune->add_option("--time-limit", time_limit, "Wall-clock limit in seconds (0 = none)");
  tune->add_option("--seed", tune_seed, "Tuning seed");
  tune->add_option("--strategy", strategy, "tpe or random");
  tune->add_option("--out", tune_out, "Directory for trials.jsonl and best.json");

  std::string in_dir, format = "md";
  auto* summarize = app.add_subcommand("summarize", "Summarize a results directory");
  summarize->add_option("--in", in_dir, "Results directory")->required()->check(CLI::ExistingDirectory);
  summarize->add_option("--format", format, "md or csv");

  plots::PlotSpec plot_spec;
  std::string plot_in, plot_out;
  auto* plot = app.add_subcommand("plot", "Render a summary metric as an SVG bar chart");
  plot->add_option("--in", plot_in, "summary.csv")->required()->check(CLI::ExistingFile);
  plot->add_option("--metric", plot_spec.metric, "ratio, gates, cnot or evals");
  plot->add_option("--out", plot_out, "Output SVG path")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return cmd_run(config_path, out_dir, workers, algorithms, sizes);
    if (*tune) return cmd_tune(tune_alg, tune_n, trials, time_limit, tune_seed, strategy, tune_out);
    if (*summarize) return cmd_summarize(in_dir, format);
    if (*plot) {
      plot_spec.input = plot_in;
      plot_spec.output = plot_out;
      plots::render(plot_spec);
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
