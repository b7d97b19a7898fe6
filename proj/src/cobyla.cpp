#include "avqa/cobyla.hpp"

#include <cmath>
#include <limits>

namespace avqa {

namespace {

using Matrix = std::vector<std::vector<double>>;

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

/// Gauss-Jordan inverse with partial pivoting. Returns the matrix B with
/// dot(B[j], rows[k]) == delta_jk, i.e. the inverse of the transpose layout
/// used for the simplex (rows[k] is a vertex displacement).
Matrix dual_basis(const Matrix& rows) {
  const std::size_t n = rows.size();
  // Solve A^T B^T = I where A has the displacements as rows.
  Matrix a(n, std::vector<double>(2 * n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) a[i][k] = rows[k][i];
    a[i][n + i] = 1.0;
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
    }
    std::swap(a[col], a[pivot]);
    const double p = a[col][col];
    for (double& v : a[col]) v /= p;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0.0) continue;
      const double factor = a[r][col];
      for (std::size_t c = 0; c < 2 * n; ++c) a[r][c] -= factor * a[col][c];
    }
  }
  // a[:, n:] = (A^T)^{-1}, whose rows are the dual vectors.
  Matrix b(n, std::vector<double>(n));
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) b[j][i] = a[j][n + i];
  }
  return b;
}

class Search {
 public:
  Search(const RefusableObjective& f, std::size_t max_evals) : f_(f), max_evals_(max_evals) {}

  /// Evaluates x, tracking the best point; nullopt means the search must stop.
  std::optional<double> eval(const std::vector<double>& x) {
    if (evals_ >= max_evals_) {
      stop_ = CobylaStop::MaxEvals;
      return std::nullopt;
    }
    const std::optional<double> v = f_(x);
    if (!v) {
      stop_ = CobylaStop::Refused;
      return std::nullopt;
    }
    ++evals_;
    if (*v < best_f_) {
      best_f_ = *v;
      best_x_ = x;
    }
    return v;
  }

  CobylaResult finish(std::vector<double> fallback, CobylaStop stop) const {
    CobylaResult r;
    r.evals = evals_;
    r.stop = stop_.value_or(stop);
    r.best_f = best_f_;
    r.best_x = evals_ > 0 ? best_x_ : std::move(fallback);
    return r;
  }

 private:
  const RefusableObjective& f_;
  std::size_t max_evals_;
  std::size_t evals_ = 0;
  std::optional<CobylaStop> stop_;
  double best_f_ = std::numeric_limits<double>::infinity();
  std::vector<double> best_x_;
};

}  // namespace

CobylaResult cobyla_minimize(const RefusableObjective& f, std::vector<double> x0,
                             std::size_t max_evals, const CobylaOptions& options) {
  constexpr double kAlpha = 0.25;  // simplex acceptability: face distance
  constexpr double kBeta = 2.1;    // simplex acceptability: edge length
  constexpr double kGamma = 0.5;   // geometry step length factor
  constexpr double kDelta = 1.1;   // trust-region vertex replacement edge bound

  Search search(f, max_evals);
  const std::size_t n = x0.size();
  if (n == 0) {
    search.eval(x0);
    return search.finish(x0, CobylaStop::Converged);
  }

  double rho = options.rho_begin;
  const double rho_end = std::min(options.rho_end, rho);

  // base: best vertex; disp[j]: vertex j minus base; fv[j]: its value.
  std::vector<double> base = x0;
  std::optional<double> fb = search.eval(base);
  if (!fb) return search.finish(x0, CobylaStop::Refused);

  Matrix disp(n, std::vector<double>(n, 0.0));
  std::vector<double> fv(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<double> x = base;
    x[j] += rho;
    const std::optional<double> fj = search.eval(x);
    if (!fj) return search.finish(x0, CobylaStop::Converged);
    disp[j][j] = rho;
    fv[j] = *fj;
    if (*fj < *fb) {
      // The new vertex becomes the base; earlier vertices shift by -rho along j.
      base[j] += rho;
      fv[j] = *fb;
      fb = fj;
      for (std::size_t k = 0; k <= j; ++k) disp[k][j] = -rho;
    }
  }
  Matrix dual = dual_basis(disp);

  auto replace_vertex = [&](std::size_t jdrop, const std::vector<double>& dx) {
    disp[jdrop] = dx;
    const double pivot = dot(dual[jdrop], dx);
    for (double& v : dual[jdrop]) v /= pivot;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == jdrop) continue;
      const double t = dot(dual[j], dx);
      for (std::size_t i = 0; i < n; ++i) dual[j][i] -= t * dual[jdrop][i];
    }
  };

  bool trust_step_next = true;
  std::vector<double> vsig(n), veta(n), dx(n), x(n);
  for (;;) {
    // Move the best vertex to the base position.
    std::optional<std::size_t> nbest;
    double fmin = *fb;
    for (std::size_t j = 0; j < n; ++j) {
      if (fv[j] < fmin) {
        fmin = fv[j];
        nbest = j;
      }
    }
    if (nbest) {
      const std::size_t nb = *nbest;
      std::swap(fv[nb], *fb);
      const std::vector<double> shift = disp[nb];
      for (std::size_t i = 0; i < n; ++i) base[i] += shift[i];
      for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) disp[k][i] -= shift[i];
      }
      std::vector<double> summed(n, 0.0);
      for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) summed[i] -= dual[k][i];
      }
      dual[nb] = std::move(summed);
    }

    const double parsig = kAlpha * rho;
    const double pareta = kBeta * rho;
    bool acceptable = true;
    for (std::size_t j = 0; j < n; ++j) {
      vsig[j] = 1.0 / norm(dual[j]);
      veta[j] = norm(disp[j]);
      if (vsig[j] < parsig || veta[j] > pareta) acceptable = false;
    }

    std::vector<double> grad(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
      const double df = fv[j] - *fb;
      for (std::size_t i = 0; i < n; ++i) grad[i] += df * dual[j][i];
    }

    if (!trust_step_next && !acceptable) {
      // Geometry step: replace the worst-shaped vertex.
      std::optional<std::size_t> jdrop;
      double worst = pareta;
      for (std::size_t j = 0; j < n; ++j) {
        if (veta[j] > worst) {
          worst = veta[j];
          jdrop = j;
        }
      }
      if (!jdrop) {
        worst = parsig;
        for (std::size_t j = 0; j < n; ++j) {
          if (vsig[j] < worst) {
            worst = vsig[j];
            jdrop = j;
          }
        }
      }
      const std::size_t jd = *jdrop;
      const double scale = kGamma * rho * vsig[jd];
      for (std::size_t i = 0; i < n; ++i) dx[i] = scale * dual[jd][i];
      if (dot(grad, dx) > 0.0) {
        for (double& v : dx) v = -v;
      }
      replace_vertex(jd, dx);
      for (std::size_t i = 0; i < n; ++i) x[i] = base[i] + dx[i];
      const std::optional<double> fx = search.eval(x);
      if (!fx) break;
      fv[jd] = *fx;
      trust_step_next = true;
      continue;
    }

    // Trust-region step on the linear model: steepest descent of length rho.
    const double gnorm = norm(grad);
    bool reduce = true;
    if (gnorm > 0.0 && std::isfinite(gnorm)) {
      for (std::size_t i = 0; i < n; ++i) dx[i] = -rho * grad[i] / gnorm;
      for (std::size_t i = 0; i < n; ++i) x[i] = base[i] + dx[i];
      const std::optional<double> fnew = search.eval(x);
      if (!fnew) break;
      const double predicted = rho * gnorm;
      const double actual = *fb - *fnew;

      std::optional<std::size_t> jdrop;
      double weight_bound = actual <= 0.0 ? 1.0 : 0.0;
      std::vector<double> sigbar(n);
      for (std::size_t j = 0; j < n; ++j) {
        const double w = std::abs(dot(dual[j], dx));
        if (w > weight_bound) {
          weight_bound = w;
          jdrop = j;
        }
        sigbar[j] = w * vsig[j];
      }
      double edgmax = kDelta * rho;
      std::optional<std::size_t> far;
      for (std::size_t j = 0; j < n; ++j) {
        if (sigbar[j] >= parsig || sigbar[j] >= vsig[j]) {
          double dist = veta[j];
          if (actual > 0.0) {
            double s = 0.0;
            for (std::size_t i = 0; i < n; ++i) s += (dx[i] - disp[j][i]) * (dx[i] - disp[j][i]);
            dist = std::sqrt(s);
          }
          if (dist > edgmax) {
            edgmax = dist;
            far = j;
          }
        }
      }
      if (far) jdrop = far;
      if (jdrop) {
        replace_vertex(*jdrop, dx);
        fv[*jdrop] = *fnew;
        if (actual > 0.0 && actual >= 0.1 * predicted) reduce = false;
      }
    }
    if (!reduce) continue;

    if (!acceptable) {
      trust_step_next = false;
      continue;
    }
    if (rho > rho_end) {
      rho *= 0.5;
      if (rho <= 1.5 * rho_end) rho = rho_end;
      continue;
    }
    break;
  }
  return search.finish(x0, CobylaStop::Converged);
}

}  // namespace avqa
