#include "avqa/hypertune.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "avqa/result.hpp"
#include "avqa/rng.hpp"

namespace avqa::hypertune {

ParamDomain ParamDomain::continuous(std::string name, double lo, double hi) {
  ParamDomain d{std::move(name), ContinuousRange{lo, hi}};
  d.validate();
  return d;
}

ParamDomain ParamDomain::integer(std::string name, std::int64_t lo, std::int64_t hi) {
  ParamDomain d{std::move(name), IntegerRange{lo, hi}};
  d.validate();
  return d;
}

ParamDomain ParamDomain::categorical(std::string name, std::vector<std::string> options) {
  ParamDomain d{std::move(name), Categorical{std::move(options)}};
  d.validate();
  return d;
}

void ParamDomain::validate() const {
  if (const auto* c = std::get_if<ContinuousRange>(&kind)) {
    if (!(c->lo < c->hi)) throw std::invalid_argument("domain " + name + ": lo must be < hi");
  } else if (const auto* i = std::get_if<IntegerRange>(&kind)) {
    if (!(i->lo < i->hi)) throw std::invalid_argument("domain " + name + ": lo must be < hi");
  } else if (std::get<Categorical>(kind).options.empty()) {
    throw std::invalid_argument("domain " + name + ": no options");
  }
}

bool ParamDomain::contains(const Value& v) const {
  if (const auto* c = std::get_if<ContinuousRange>(&kind)) {
    const auto* x = std::get_if<double>(&v);
    return x != nullptr && *x >= c->lo && *x <= c->hi;
  }
  if (const auto* i = std::get_if<IntegerRange>(&kind)) {
    const auto* x = std::get_if<std::int64_t>(&v);
    return x != nullptr && *x >= i->lo && *x <= i->hi;
  }
  const auto* s = std::get_if<std::string>(&v);
  const auto& opts = std::get<Categorical>(kind).options;
  return s != nullptr && std::find(opts.begin(), opts.end(), *s) != opts.end();
}

std::size_t startup_trials(std::size_t n_trials) { return std::max<std::size_t>(5, n_trials / 5); }

double as_double(const Value& v) {
  if (const auto* d = std::get_if<double>(&v)) return *d;
  if (const auto* i = std::get_if<std::int64_t>(&v)) return static_cast<double>(*i);
  throw std::invalid_argument("expected a number, got '" + std::get<std::string>(v) + "'");
}

std::int64_t as_int(const Value& v) {
  if (const auto* i = std::get_if<std::int64_t>(&v)) return *i;
  if (const auto* d = std::get_if<double>(&v)) {
    if (std::floor(*d) == *d) return static_cast<std::int64_t>(*d);
    throw std::invalid_argument("expected an integer, got " + std::to_string(*d));
  }
  throw std::invalid_argument("expected an integer, got '" + std::get<std::string>(v) + "'");
}

const std::string& as_string(const Value& v) {
  if (const auto* s = std::get_if<std::string>(&v)) return *s;
  throw std::invalid_argument("expected a string value");
}

std::string to_display(const Value& v) {
  if (const auto* s = std::get_if<std::string>(&v)) return *s;
  if (const auto* i = std::get_if<std::int64_t>(&v)) return std::to_string(*i);
  std::ostringstream os;
  os.precision(6);
  os << std::get<double>(v);
  return os.str();
}

namespace {

Value sample_uniform(const ParamDomain& d, RngStream& rng) {
  if (const auto* c = std::get_if<ContinuousRange>(&d.kind)) return rng.uniform(c->lo, c->hi);
  if (const auto* i = std::get_if<IntegerRange>(&d.kind)) return rng.integer(i->lo, i->hi);
  const auto& opts = std::get<Categorical>(d.kind).options;
  return opts[rng.index(opts.size())];
}

double width_of(const ParamDomain& d) {
  if (const auto* c = std::get_if<ContinuousRange>(&d.kind)) return c->hi - c->lo;
  const auto& i = std::get<IntegerRange>(d.kind);
  return static_cast<double>(i.hi - i.lo);
}

/// Per-dimension density model fitted on one group of trials.
class DimensionModel {
 public:
  DimensionModel(const ParamDomain& d, std::vector<Value> points, double bandwidth)
      : domain_(d), points_(std::move(points)), bandwidth_(bandwidth) {}

  [[nodiscard]] double log_density(const Value& v) const {
    if (const auto* cat = std::get_if<Categorical>(&domain_.kind)) {
      const auto& s = as_string(v);
      const auto hits = std::count_if(points_.begin(), points_.end(),
                                      [&](const Value& p) { return as_string(p) == s; });
      return std::log((static_cast<double>(hits) + 1.0) /
                      static_cast<double>(points_.size() + cat->options.size()));
    }
    const double x = as_double(v);
    if (points_.empty()) return -std::log(width_of(domain_));
    double sum = 0.0;
    for (const Value& p : points_) {
      const double z = (x - as_double(p)) / bandwidth_;
      sum += std::exp(-0.5 * z * z);
    }
    const double norm = static_cast<double>(points_.size()) * bandwidth_ * std::sqrt(2.0 * std::numbers::pi);
    // Floor keeps the log finite far from every kernel.
    return std::log(std::max(sum / norm, 1e-300));
  }

  [[nodiscard]] Value sample(RngStream& rng) const {
    if (const auto* cat = std::get_if<Categorical>(&domain_.kind)) {
      std::vector<double> w(cat->options.size(), 1.0);
      for (const Value& p : points_) {
        const auto it = std::find(cat->options.begin(), cat->options.end(), as_string(p));
        w[static_cast<std::size_t>(it - cat->options.begin())] += 1.0;
      }
      double target = rng.uniform() * std::accumulate(w.begin(), w.end(), 0.0);
      for (std::size_t k = 0; k < w.size(); ++k) {
        target -= w[k];
        if (target < 0.0) return cat->options[k];
      }
      return cat->options.back();
    }
    if (points_.empty()) return sample_uniform(domain_, rng);
    const double centre = as_double(points_[rng.index(points_.size())]);
    const double x = centre + bandwidth_ * rng.normal();
    if (const auto* c = std::get_if<ContinuousRange>(&domain_.kind)) {
      return std::clamp(x, c->lo, c->hi);
    }
    const auto& i = std::get<IntegerRange>(domain_.kind);
    const auto r = static_cast<std::int64_t>(std::llround(x));
    return std::clamp(r, i.lo, i.hi);
  }

 private:
  const ParamDomain& domain_;
  std::vector<Value> points_;
  double bandwidth_;
};

ParamConfig propose_tpe(const std::vector<ParamDomain>& space, const std::vector<TrialRecord>& past,
                        const SearchOptions& opts, RngStream& rng) {
  std::vector<std::size_t> order(past.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return past[a].loss < past[b].loss; });
  const auto n_good = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::ceil(opts.gamma * static_cast<double>(past.size()))));

  std::vector<DimensionModel> good;
  std::vector<DimensionModel> bad;
  const double root_n = std::sqrt(static_cast<double>(past.size()));
  for (const ParamDomain& d : space) {
    std::vector<Value> g;
    std::vector<Value> b;
    for (std::size_t r = 0; r < order.size(); ++r) {
      (r < n_good ? g : b).push_back(past[order[r]].config.at(d.name));
    }
    const double bw = std::holds_alternative<Categorical>(d.kind) ? 1.0 : width_of(d) / root_n;
    good.emplace_back(d, std::move(g), bw);
    bad.emplace_back(d, std::move(b), bw);
  }

  ParamConfig best;
  double best_score = -std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < opts.n_candidates; ++c) {
    ParamConfig cand;
    double score = 0.0;
    for (std::size_t k = 0; k < space.size(); ++k) {
      Value v = good[k].sample(rng);
      score += good[k].log_density(v) - bad[k].log_density(v);
      cand.emplace(space[k].name, std::move(v));
    }
    if (score > best_score) {
      best_score = score;
      best = std::move(cand);
    }
  }
  return best;
}

}  // namespace

bool improves(const TrialRecord& candidate, const TrialRecord& incumbent) {
  const double tol = kLossTieTolerance * std::max(1.0, std::abs(incumbent.loss));
  if (!std::isfinite(incumbent.loss)) return candidate.loss < incumbent.loss;
  if (candidate.loss < incumbent.loss - tol) return true;
  if (candidate.loss > incumbent.loss + tol) return false;
  return candidate.eval_count < incumbent.eval_count;
}

SearchResult search(const std::vector<ParamDomain>& space, const TrialObjective& objective,
                    const SearchOptions& opts) {
  if (opts.n_trials < 1) throw std::invalid_argument("search: n_trials must be >= 1");
  for (const ParamDomain& d : space) d.validate();

  RngStream rng(opts.seed, "hypertune");
  const std::size_t startup = startup_trials(opts.n_trials);
  Stopwatch clock;
  SearchResult out;
  std::size_t best_index = 0;

  for (std::size_t t = 0; t < opts.n_trials; ++t) {
    if (t > 0 && clock.seconds() >= opts.time_limit) break;

    ParamConfig cfg;
    if (opts.strategy == Strategy::Random || t < startup) {
      for (const ParamDomain& d : space) cfg.emplace(d.name, sample_uniform(d, rng));
    } else {
      cfg = propose_tpe(space, out.trials, opts, rng);
    }

    TrialRecord rec;
    rec.config = cfg;
    Stopwatch trial_clock;
    try {
      const TrialOutcome o = objective(cfg);
      rec.loss = std::isnan(o.loss) ? std::numeric_limits<double>::infinity() : o.loss;
      rec.eval_count = o.eval_count;
    } catch (const std::exception&) {
      rec.loss = std::numeric_limits<double>::infinity();
    }
    rec.wall_time = trial_clock.seconds();

    if (out.trials.empty() || improves(rec, out.trials[best_index])) {
      best_index = out.trials.size();
      out.best = rec.config;
      out.best_loss = rec.loss;
    }
    out.trials.push_back(std::move(rec));
  }
  return out;
}

}  // namespace avqa::hypertune
