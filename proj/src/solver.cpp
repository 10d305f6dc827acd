#include "kwc/solver.hpp"

#include <cmath>

#include "kwc/operators.hpp"

namespace kwc {

int pcg_solve(const ConvexObjective& obj, const ScalarField& at,
              const ScalarField& rhs, ScalarField& x, double rel_tol,
              int max_iter, std::vector<double>* precond_residuals) {
  const Grid& g = rhs.grid();
  const int n = rhs.size();
  ScalarField r(g), z(g), p(g), Ap(g), diag(g);
  obj.hess_diag(at, diag);

  obj.hess_apply(at, x, Ap);
  for (int i = 0; i < n; ++i) r[i] = rhs[i] - Ap[i];
  for (int i = 0; i < n; ++i) z[i] = r[i] / diag[i];
  p = z;
  double rz = inner_product(r, z);
  const double stop = rel_tol * norm_X(rhs) + 1e-300;
  if (precond_residuals) precond_residuals->push_back(std::sqrt(std::max(rz, 0.0)));

  int it = 0;
  while (norm_X(r) > stop && it < max_iter) {
    obj.hess_apply(at, p, Ap);
    const double alpha = rz / inner_product(p, Ap);
    for (int i = 0; i < n; ++i) x[i] += alpha * p[i];
    for (int i = 0; i < n; ++i) r[i] -= alpha * Ap[i];
    for (int i = 0; i < n; ++i) z[i] = r[i] / diag[i];
    const double rz_new = inner_product(r, z);
    const double beta = rz_new / rz;
    rz = rz_new;
    for (int i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
    ++it;
    if (precond_residuals)
      precond_residuals->push_back(std::sqrt(std::max(rz, 0.0)));
  }
  return it;
}

NewtonStats newton_minimize(const ConvexObjective& obj, ScalarField& x,
                            double tol, double cg_tol, int newton_max,
                            int cg_max) {
  const Grid& g = x.grid();
  const int n = x.size();
  ScalarField grad(g), dir(g), trial(g), neg(g);
  NewtonStats stats;

  for (int it = 0; it < newton_max; ++it) {
    obj.gradient(x, grad);
    stats.grad_sup = grad.linf();
    stats.iterations = it;
    if (stats.grad_sup <= tol) return stats;

    for (int i = 0; i < n; ++i) neg[i] = -grad[i];
    dir.fill(0.0);
    stats.cg_iterations_total += pcg_solve(obj, x, neg, dir, cg_tol, cg_max);

    const double f0 = obj.value(x);
    const double slope = inner_product(grad, dir);  // negative for a descent dir
    // roundoff guard: near the minimum the demanded decrease drops below
    // the resolution of the objective value
    const double fuzz = 1e-14 * (1.0 + std::abs(f0));
    double t = 1.0;
    bool accepted = false;
    while (t >= 1e-14) {
      for (int i = 0; i < n; ++i) trial[i] = x[i] + t * dir[i];
      if (obj.value(trial) <= f0 + 1e-4 * t * slope + fuzz) {
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (!accepted)
      throw SolverError("newton: line search stalled", stats.grad_sup, it);
    x = trial;
  }
  obj.gradient(x, grad);
  stats.grad_sup = grad.linf();
  stats.iterations = newton_max;
  if (stats.grad_sup <= tol) return stats;
  throw SolverError("newton: residual above tolerance after iteration cap",
                    stats.grad_sup, newton_max);
}

}  // namespace kwc
