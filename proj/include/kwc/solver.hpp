#ifndef KWC_SOLVER_HPP
#define KWC_SOLVER_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "kwc/grid.hpp"

namespace kwc {

/// Nonconvergence of an inner solve or of the fixed-point iteration;
/// carries the last residual and, for the fixed point, the full history.
class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, double residual, int iterations,
              std::vector<double> history = {})
      : std::runtime_error(what),
        residual(residual),
        iterations(iterations),
        residual_history(std::move(history)) {}
  double residual;
  int iterations;
  std::vector<double> residual_history;
};

/// Smooth strictly convex objective over nodal values. Gradients and
/// Hessians use the strong (per-volume) form, so the gradient sup-norm is
/// the pointwise residual of the underlying Euler-Lagrange equation.
class ConvexObjective {
 public:
  virtual ~ConvexObjective() = default;
  virtual double value(const ScalarField& x) const = 0;
  virtual void gradient(const ScalarField& x, ScalarField& out) const = 0;
  virtual void hess_apply(const ScalarField& at, const ScalarField& dir,
                          ScalarField& out) const = 0;
  virtual void hess_diag(const ScalarField& at, ScalarField& out) const = 0;
};

struct NewtonStats {
  int iterations = 0;
  double grad_sup = 0.0;
  int cg_iterations_total = 0;
};

/// Jacobi-preconditioned conjugate gradients for the (SPD) Newton system.
/// Relative tolerance on the residual X-norm; optional per-iteration record
/// of the preconditioned residual norm sqrt(r.z).
int pcg_solve(const ConvexObjective& obj, const ScalarField& at,
              const ScalarField& rhs, ScalarField& x, double rel_tol,
              int max_iter, std::vector<double>* precond_residuals = nullptr);

/// Damped Newton with Armijo backtracking; stops when the gradient
/// sup-norm drops below tol. Throws SolverError on stagnation.
NewtonStats newton_minimize(const ConvexObjective& obj, ScalarField& x,
                            double tol, double cg_tol, int newton_max,
                            int cg_max);

}  // namespace kwc

#endif
