#ifndef KWC_CONSTANTS_HPP
#define KWC_CONSTANTS_HPP

#include "kwc/coefficients.hpp"
#include "kwc/grid.hpp"

namespace kwc {

/// Time discretization and solver settings. tau = T/m must stay below
/// tau_star = 1/(4(|g'|_inf + 1)).
struct SchemeParams {
  int m = 32;
  double T = 1.0;
  double nu = 0.5;      // in (0, nu0 + 1]
  double eps = 0.01;    // in (0, 1)
  double L = 1.0;       // free constant of the a-priori chain, any L > 0

  double newton_tol = 1e-10;  // sup-norm of the strong-form residual
  double cg_tol = 1e-12;      // relative
  double fp_tol = -1.0;       // <= 0 means 1e-8 * sqrt(measure)
  double relaxation = 1.0;    // Picard damping, in (0, 1]
  int newton_max = 60;
  int cg_max = 20000;
  int fp_max = 500;

  double tau() const { return T / m; }
  double fp_tolerance(double measure) const;
};

/// Every explicit a-priori constant of the discrete scheme, all evaluated
/// by closed formulas from sup-norms of the coefficient families over
/// [-R0, R0]. Context fields (kappa, delta_star, ...) are copied in so a
/// report is self-contained.
struct ConstantsReport {
  double R0 = 0.0;
  double R_star = 0.0;
  double C1 = 0.0, C2 = 0.0, C3 = 0.0, C4 = 0.0, C5 = 0.0;
  double C6 = 0.0, C7 = 0.0, C8 = 0.0, C9 = 0.0;
  double R1 = 0.0, R2 = 0.0, R3 = 0.0;
  double tau_star = 0.0;

  // sup-norms over [-R0, R0] the formulas consumed
  double alpha_sup = 0.0, alpha_prime_sup = 0.0;
  double alpha0_sup = 0.0, alpha0_prime_sup = 0.0;
  double G_sup = 0.0, G_at_zero = 0.0, g_prime_sup = 0.0;

  // two readings of the nu-weighted eta-coupling coefficient (the weight
  // of |grad eta|^2 absorbed by R_star); the unsquared form is the one the
  // estimate chain actually produces
  double eta_coupling_unsquared = 0.0;
  double eta_coupling_squared = 0.0;

  // context
  double kappa = 0.0, delta_star = 0.0, M0 = 0.0, nu0 = 0.0;
  double T = 0.0, tau = 0.0, nu = 0.0, eps = 0.0, L = 0.0, measure = 0.0;
};

/// Smallest R >= max(u_sup, v_sup, extra_sup, v_sup/M0) with
/// g(-R) <= -u_sup and g(R) >= u_sup, located by scan + bisection and then
/// inflated by 1e-9 relative. extra_sup covers initial-data sup-norms.
/// Throws std::runtime_error if no bracket exists within the scan range.
double compute_R0(double u_sup, double v_sup, double extra_sup,
                  const ModelParams& p, double scan_limit = 1e8);

ConstantsReport compute_constants(const ModelParams& p, const SchemeParams& s,
                                  const Grid& grid, double R0, double nu);

}  // namespace kwc

#endif
