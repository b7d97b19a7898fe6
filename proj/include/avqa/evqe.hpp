#pragma once

#include <cstdint>
#include <vector>

#include "avqa/circuit.hpp"
#include "avqa/param_opt.hpp"
#include "avqa/result.hpp"
#include "avqa/rng.hpp"

namespace avqa::evqe {

enum class ActionKind : std::uint8_t { None, RX, RY, RZ, Control, Target };

/// What one qubit does inside a gene. Control/Target name the paired qubit.
struct Action {
  ActionKind kind = ActionKind::None;
  int partner = -1;

  friend bool operator==(const Action&, const Action&) = default;
};

/// One layer of gates: a per-qubit action table with bijective CNOT pairing.
struct Gene {
  std::vector<Action> actions;

  [[nodiscard]] std::size_t rotation_count() const;
  [[nodiscard]] std::size_t cnot_count() const;
  [[nodiscard]] bool empty() const { return rotation_count() == 0 && cnot_count() == 0; }
  /// Throws StructuralError on unmatched or out-of-range pairings.
  void validate() const;

  friend bool operator==(const Gene&, const Gene&) = default;
};

/// A candidate circuit. params holds one angle per rotation action, in gene order.
struct Genome {
  std::vector<Gene> genes;
  std::vector<double> params;
  double cached_loss = 0.0;
  double cached_expectation = 0.0;

  [[nodiscard]] std::size_t cnot_count() const;
  /// First parameter index owned by gene g.
  [[nodiscard]] std::size_t slot_offset(std::size_t g) const;
};

struct Config {
  int population_size = 10;
  int dist_threshold = 3;
  double prob_insertion = 0.5;
  double prob_removal = 0.1;
  double a = 0.0;
  double b = 0.0;
  std::uint64_t seed = 0;

  void validate() const;
};

/// expectation + a * genes + b * cnots
double loss(double expectation, std::size_t genes, std::size_t cnots, double a, double b);
double loss(const Genome& g, double a, double b);

/// Genes in order; within a gene rotations by qubit, then CNOT pairs by control.
Circuit genome_to_circuit(const Genome& g, int n_qubits);

/// Each qubit: None with probability 1/2, else uniform over {RX, RY, RZ, CNOT};
/// a CNOT pairs with a uniformly chosen later free qubit in a random orientation
/// and falls back to None when no partner is left. All-None genes are redrawn.
Gene random_gene(int n_qubits, RngStream& rng);

struct Mutation {
  Genome genome;
  bool inserted = false;
  bool removed = false;
};

/// Removal of one random gene with prob_removal, then insertion of a random
/// gene at the end with prob_insertion. New angles start at 0.
Mutation mutate(const Genome& g, const Config& cfg, int n_qubits, RngStream& rng);

/// |length difference| + structurally different genes over the common prefix.
std::size_t distance(const Genome& x, const Genome& y);

/// Greedy clustering: each genome joins the first species whose
/// representative (first member) is within threshold, else founds one.
std::vector<std::vector<std::size_t>> speciate(const std::vector<Genome>& population,
                                               int dist_threshold);

/// Parent sampling weights: (1 / species size) * (species size - rank by loss).
std::vector<double> selection_weights(const std::vector<Genome>& population,
                                      const std::vector<std::vector<std::size_t>>& species);

AlgorithmResult evolve(const ProblemContext& ctx, const Config& cfg, BudgetLedger& ledger);
AlgorithmResult evolve(const IsingModel& m, const Config& cfg, BudgetLedger& ledger);

}  // namespace avqa::evqe
