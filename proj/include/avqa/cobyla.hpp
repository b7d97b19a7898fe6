#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace avqa {

struct CobylaOptions {
  double rho_begin = 0.5;
  double rho_end = 1e-4;
};

enum class CobylaStop { Converged, MaxEvals, Refused };

struct CobylaResult {
  std::vector<double> best_x;
  double best_f = 0.0;
  std::size_t evals = 0;
  CobylaStop stop = CobylaStop::Converged;
};

/// Objective that may refuse an evaluation (returns nullopt), which stops the search.
using RefusableObjective = std::function<std::optional<double>(std::span<const double>)>;

/**
 * Powell's COBYLA restricted to the unconstrained case.
 *
 * Keeps a simplex of n+1 evaluated points, interpolates a linear model of
 * the objective through them, and steps to the model minimizer on a ball of
 * radius rho. Simplex geometry is repaired with dedicated steps whenever a
 * vertex is too far from the best point or too close to the opposite face.
 * rho halves from rho_begin down to rho_end when steps stop paying off.
 *
 * The returned point is the best one ever evaluated. If the very first
 * evaluation is refused, evals is 0 and best_f is +inf.
 */
CobylaResult cobyla_minimize(const RefusableObjective& f, std::vector<double> x0,
                             std::size_t max_evals, const CobylaOptions& options = {});

}  // namespace avqa
