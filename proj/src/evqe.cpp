#include "avqa/evqe.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "avqa/errors.hpp"

namespace avqa::evqe {

namespace {

GateKind rotation_gate(ActionKind k) {
  switch (k) {
    case ActionKind::RX: return GateKind::RX;
    case ActionKind::RY: return GateKind::RY;
    default: return GateKind::RZ;
  }
}

bool is_rotation_action(ActionKind k) {
  return k == ActionKind::RX || k == ActionKind::RY || k == ActionKind::RZ;
}

}  // namespace

std::size_t Gene::rotation_count() const {
  return static_cast<std::size_t>(std::count_if(
      actions.begin(), actions.end(), [](const Action& a) { return is_rotation_action(a.kind); }));
}

std::size_t Gene::cnot_count() const {
  return static_cast<std::size_t>(std::count_if(
      actions.begin(), actions.end(), [](const Action& a) { return a.kind == ActionKind::Control; }));
}

void Gene::validate() const {
  const int n = static_cast<int>(actions.size());
  for (int q = 0; q < n; ++q) {
    const Action& a = actions[static_cast<std::size_t>(q)];
    if (a.kind != ActionKind::Control && a.kind != ActionKind::Target) continue;
    if (a.partner < 0 || a.partner >= n || a.partner == q) {
      throw StructuralError("gene: qubit " + std::to_string(q) + " has invalid CNOT partner");
    }
    const Action& other = actions[static_cast<std::size_t>(a.partner)];
    const ActionKind expected =
        a.kind == ActionKind::Control ? ActionKind::Target : ActionKind::Control;
    if (other.kind != expected || other.partner != q) {
      throw StructuralError("gene: unmatched CNOT pairing at qubit " + std::to_string(q));
    }
  }
}

std::size_t Genome::cnot_count() const {
  std::size_t total = 0;
  for (const Gene& g : genes) total += g.cnot_count();
  return total;
}

std::size_t Genome::slot_offset(std::size_t g) const {
  std::size_t offset = 0;
  for (std::size_t i = 0; i < g; ++i) offset += genes[i].rotation_count();
  return offset;
}

void Config::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(std::string("EVQE config: ") + what);
  };
  require(population_size >= 5 && population_size <= 20, "population_size must be in 5..20");
  require(dist_threshold >= 1 && dist_threshold <= 10, "dist_threshold must be in 1..10");
  require(prob_insertion >= 0.0 && prob_insertion <= 1.0, "prob_insertion must be in [0, 1]");
  require(prob_removal >= 0.0 && prob_removal <= 1.0, "prob_removal must be in [0, 1]");
  require(a >= 0.0 && a <= 0.5, "a must be in [0, 0.5]");
  require(b >= 0.0 && b <= 0.5, "b must be in [0, 0.5]");
}

double loss(double expectation, std::size_t genes, std::size_t cnots, double a, double b) {
  return expectation + a * static_cast<double>(genes) + b * static_cast<double>(cnots);
}

double loss(const Genome& g, double a, double b) {
  return loss(g.cached_expectation, g.genes.size(), g.cnot_count(), a, b);
}

Circuit genome_to_circuit(const Genome& g, int n_qubits) {
  CircuitBuilder builder(n_qubits);
  std::size_t slot = 0;
  for (const Gene& gene : g.genes) {
    if (gene.actions.size() != static_cast<std::size_t>(n_qubits)) {
      throw StructuralError("gene width does not match qubit count");
    }
    gene.validate();
    for (int q = 0; q < n_qubits; ++q) {
      const Action& a = gene.actions[static_cast<std::size_t>(q)];
      if (!is_rotation_action(a.kind)) continue;
      if (slot >= g.params.size()) throw StructuralError("genome has fewer angles than rotations");
      builder.rotation(rotation_gate(a.kind), q, g.params[slot++]);
    }
    for (int q = 0; q < n_qubits; ++q) {
      const Action& a = gene.actions[static_cast<std::size_t>(q)];
      if (a.kind == ActionKind::Control) builder.cnot(q, a.partner);
    }
  }
  if (slot != g.params.size()) throw StructuralError("genome has more angles than rotations");
  return builder.build();
}

Gene random_gene(int n_qubits, RngStream& rng) {
  const auto n = static_cast<std::size_t>(n_qubits);
  for (;;) {
    Gene gene;
    gene.actions.assign(n, Action{});
    std::vector<bool> assigned(n, false);
    for (std::size_t q = 0; q < n; ++q) {
      if (assigned[q]) continue;
      assigned[q] = true;
      if (rng.bernoulli(0.5)) continue;
      switch (rng.index(4)) {
        case 0: gene.actions[q].kind = ActionKind::RX; break;
        case 1: gene.actions[q].kind = ActionKind::RY; break;
        case 2: gene.actions[q].kind = ActionKind::RZ; break;
        default: {
          std::vector<std::size_t> free;
          for (std::size_t k = q + 1; k < n; ++k) {
            if (!assigned[k]) free.push_back(k);
          }
          if (free.empty()) break;
          const std::size_t partner = free[rng.index(free.size())];
          assigned[partner] = true;
          const bool is_control = rng.bernoulli(0.5);
          gene.actions[q] = {is_control ? ActionKind::Control : ActionKind::Target,
                             static_cast<int>(partner)};
          gene.actions[partner] = {is_control ? ActionKind::Target : ActionKind::Control,
                                   static_cast<int>(q)};
          break;
        }
      }
    }
    if (!gene.empty()) return gene;
  }
}

Mutation mutate(const Genome& g, const Config& cfg, int n_qubits, RngStream& rng) {
  Mutation m{g, false, false};
  if (rng.bernoulli(cfg.prob_removal) && !m.genome.genes.empty()) {
    const std::size_t victim = rng.index(m.genome.genes.size());
    const std::size_t begin = m.genome.slot_offset(victim);
    const std::size_t count = m.genome.genes[victim].rotation_count();
    auto& params = m.genome.params;
    params.erase(params.begin() + static_cast<std::ptrdiff_t>(begin),
                 params.begin() + static_cast<std::ptrdiff_t>(begin + count));
    m.genome.genes.erase(m.genome.genes.begin() + static_cast<std::ptrdiff_t>(victim));
    m.removed = true;
  }
  if (rng.bernoulli(cfg.prob_insertion)) {
    Gene gene = random_gene(n_qubits, rng);
    m.genome.params.resize(m.genome.params.size() + gene.rotation_count(), 0.0);
    m.genome.genes.push_back(std::move(gene));
    m.inserted = true;
  }
  return m;
}

std::size_t distance(const Genome& x, const Genome& y) {
  const std::size_t common = std::min(x.genes.size(), y.genes.size());
  std::size_t d = std::max(x.genes.size(), y.genes.size()) - common;
  for (std::size_t i = 0; i < common; ++i) {
    if (!(x.genes[i] == y.genes[i])) ++d;
  }
  return d;
}

std::vector<std::vector<std::size_t>> speciate(const std::vector<Genome>& population,
                                               int dist_threshold) {
  std::vector<std::vector<std::size_t>> species;
  for (std::size_t i = 0; i < population.size(); ++i) {
    bool placed = false;
    for (auto& s : species) {
      if (distance(population[s.front()], population[i]) <= static_cast<std::size_t>(dist_threshold)) {
        s.push_back(i);
        placed = true;
        break;
      }
    }
    if (!placed) species.push_back({i});
  }
  return species;
}

std::vector<double> selection_weights(const std::vector<Genome>& population,
                                      const std::vector<std::vector<std::size_t>>& species) {
  std::vector<double> w(population.size(), 0.0);
  for (const auto& members : species) {
    std::vector<std::size_t> ranked = members;
    std::stable_sort(ranked.begin(), ranked.end(), [&](std::size_t l, std::size_t r) {
      return population[l].cached_loss < population[r].cached_loss;
    });
    const double size = static_cast<double>(ranked.size());
    for (std::size_t rank = 0; rank < ranked.size(); ++rank) {
      w[ranked[rank]] = (size - static_cast<double>(rank)) / size;
    }
  }
  return w;
}

namespace {

std::size_t sample_index(const std::vector<double>& weights, RngStream& rng) {
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  double target = rng.uniform() * total;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    target -= weights[i];
    if (target < 0.0) return i;
  }
  return weights.size() - 1;
}

}  // namespace

AlgorithmResult evolve(const ProblemContext& ctx, const Config& cfg, BudgetLedger& ledger) {
  cfg.validate();
  Stopwatch clock;
  const int n = ctx.model.n;
  const std::size_t cap = ledger.per_structure_cap();
  RngStream rng(cfg.seed, "evqe");

  Genome best;
  best.cached_loss = std::numeric_limits<double>::infinity();
  std::size_t largest = 0;

  // Optimizes the given slots of g in place; false once the ledger is spent.
  auto train = [&](Genome& g, std::vector<std::size_t> slots) {
    const Circuit c = genome_to_circuit(g, n);
    largest = std::max(largest, c.size());
    const OptResult opt = optimize_circuit(c, ctx.energy, ledger, cap, std::move(slots));
    if (opt.evals_used == 0) return false;
    g.params = opt.best_params;
    g.cached_expectation = opt.best_value;
    g.cached_loss = loss(g, cfg.a, cfg.b);
    if (g.cached_loss < best.cached_loss) best = g;
    return true;
  };
  auto all_slots = [](const Genome& g) {
    std::vector<std::size_t> s(g.params.size());
    std::iota(s.begin(), s.end(), std::size_t{0});
    return s;
  };

  std::vector<Genome> population;
  bool budget_left = true;
  for (int i = 0; i < cfg.population_size && budget_left; ++i) {
    Genome g;
    g.genes.push_back(random_gene(n, rng));
    g.params.assign(g.genes.back().rotation_count(), 0.0);
    budget_left = train(g, all_slots(g));
    if (budget_left) population.push_back(std::move(g));
  }

  while (budget_left && !ledger.exhausted() && !population.empty()) {
    const auto species = speciate(population, cfg.dist_threshold);
    const std::vector<double> weights = selection_weights(population, species);
    std::vector<Genome> offspring;
    for (int k = 0; k < cfg.population_size; ++k) {
      const Genome& parent = population[sample_index(weights, rng)];
      Mutation m = mutate(parent, cfg, n, rng);
      Genome child = std::move(m.genome);
      std::vector<std::size_t> slots;
      if (!child.genes.empty()) {
        const std::size_t last = child.genes.size() - 1;
        const std::size_t begin = child.slot_offset(last);
        for (std::size_t s = begin; s < child.params.size(); ++s) slots.push_back(s);
      }
      if (!train(child, std::move(slots))) {
        budget_left = false;
        break;
      }
      offspring.push_back(std::move(child));
    }
    for (Genome& o : offspring) population.push_back(std::move(o));
    std::stable_sort(population.begin(), population.end(), [](const Genome& l, const Genome& r) {
      return l.cached_loss < r.cached_loss;
    });
    population.resize(std::min(population.size(), static_cast<std::size_t>(cfg.population_size)));
  }

  Circuit best_circuit = best.genes.empty() && best.params.empty() && !std::isfinite(best.cached_loss)
                             ? Circuit(n)
                             : genome_to_circuit(best, n);
  const double expectation_value =
      std::isfinite(best.cached_loss) ? best.cached_expectation : std::numeric_limits<double>::infinity();
  AlgorithmResult r = make_result("evqe", ctx, best_circuit, expectation_value, best.cached_loss,
                                  ledger, largest);
  r.wall_time = clock.seconds();
  return r;
}

AlgorithmResult evolve(const IsingModel& m, const Config& cfg, BudgetLedger& ledger) {
  return evolve(ProblemContext::from_model(m), cfg, ledger);
}

}  // namespace avqa::evqe
