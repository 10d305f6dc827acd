#include "kwc/constants.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace kwc {

double SchemeParams::fp_tolerance(double measure) const {
  return fp_tol > 0.0 ? fp_tol : 1e-8 * std::sqrt(measure);
}

namespace {

// feasibility margin of the sup-norm conditions at radius R
double r0_margin(double R, double u_sup, const ModelParams& p) {
  return std::min(p.g(R) - u_sup, -p.g(-R) - u_sup);
}

}  // namespace

double compute_R0(double u_sup, double v_sup, double extra_sup,
                  const ModelParams& p, double scan_limit) {
  if (u_sup < 0.0 || v_sup < 0.0 || extra_sup < 0.0)
    throw std::invalid_argument("compute_R0: sup-norms must be nonnegative");
  double lo = std::max({u_sup, v_sup, extra_sup, v_sup / p.M0});
  if (r0_margin(lo, u_sup, p) >= 0.0) return lo * (1.0 + 1e-9);

  // scan outward for a feasible radius, then bisect onto the boundary
  double step = std::max(1.0, lo) * 0.5;
  double hi = lo;
  bool found = false;
  while (hi < scan_limit) {
    hi += step;
    step *= 1.5;
    if (r0_margin(hi, u_sup, p) >= 0.0) {
      found = true;
      break;
    }
    lo = hi;
  }
  if (!found)
    throw std::runtime_error("compute_R0: no feasible radius within scan range");
  for (int it = 0; it < 200 && hi - lo > 1e-13 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (r0_margin(mid, u_sup, p) >= 0.0)
      hi = mid;
    else
      lo = mid;
  }
  return hi * (1.0 + 1e-9);
}

ConstantsReport compute_constants(const ModelParams& p, const SchemeParams& s,
                                  const Grid& grid, double R0, double nu) {
  ConstantsReport r;
  const double d = p.delta_star;
  const double meas = grid.measure();
  const double kap2 = p.kappa * p.kappa;

  r.R0 = R0;
  r.alpha_sup = p.alpha_family.sup_on(R0);
  r.alpha_prime_sup = p.alpha_family.d1_sup_on(R0);
  r.alpha0_sup = p.alpha0_family.sup_on(R0);
  r.alpha0_prime_sup = p.alpha0_family.d1_sup_on(R0);
  r.G_sup = sampled_sup([&](double x) { return p.G(x); }, R0);
  r.G_at_zero = std::abs(p.G(0.0));
  r.g_prime_sup = p.dg_sup();
  r.tau_star = 1.0 / (4.0 * (r.g_prime_sup + 1.0));

  r.C1 = r.G_at_zero * meas + R0 * R0 * meas +
         0.5 * R0 * R0 * meas * r.g_prime_sup + s.L * R0 * R0 * meas;

  r.R_star = (kap2 / (2.0 * (1.0 + kap2))) * (1.0 / (1.0 + R0 * R0)) *
             (std::pow(d, 4) / (1.0 + std::pow(d, 4))) *
             (1.0 / (2.0 * (1.0 + p.nu0) * (1.0 + p.nu0))) *
             (1.0 / (1.0 + r.alpha0_sup)) *
             (1.0 / (1.0 + r.alpha0_prime_sup * r.alpha0_prime_sup));

  const double cross = r.alpha_sup * r.alpha0_prime_sup * R0 / (d * d);
  r.C2 = r.R_star * meas * (R0 * R0 / d + cross * cross / (2.0 * kap2));
  r.C3 = r.C1 + r.C2;
  // clamped into (0, 1]; the downstream bounds only get more conservative
  r.C4 = std::min({d / (r.alpha0_sup * r.alpha_sup), 1.0 / r.alpha0_sup, 1.0});
  r.C5 = std::min({0.5, s.L, 0.5 * r.C4 * p.M0});
  r.R1 = r.C3 / r.C5;
  r.C6 = std::min(1.0, r.C4 * r.R_star);
  r.C7 = r.R1 / (2.0 * r.C6) + s.T * r.C3 / r.C6;
  r.R2 = s.T * s.T * R0 * R0 * meas * (1.0 + 1.0 / (2.0 * d * d)) + r.C7;
  r.R3 = 2.0 * r.R2 / s.T;

  // data-dependent Lipschitz-continuity constants, evaluated over the
  // invariant class (|eta|_X^2 <= R1, kappa^2 |grad eta|^2 <= R3, ...)
  const double eta_h1_sq = r.R1 + r.R3 / kap2;
  const double theta_x_sq = r.R1 / r.R_star;
  const double grad_theta_sq = r.R3 / (nu * nu);
  r.C8 = 0.5 * kap2 * eta_h1_sq + r.G_sup * meas + meas * r.alpha_sup * s.eps +
         std::sqrt(meas) * r.alpha_sup * std::sqrt(grad_theta_sq) +
         0.5 * std::max((1.0 + p.nu0) * (1.0 + p.nu0), p.M0) *
             (theta_x_sq + grad_theta_sq);
  r.C9 = (r.R1 + d * theta_x_sq) / (2.0 * s.T) + r.C8 +
         s.T * R0 * R0 * meas * (1.0 + 1.0 / (2.0 * d * d));

  const double base = r.alpha0_prime_sup * R0 / (d * d);
  r.eta_coupling_unsquared =
      0.5 * nu * nu * r.alpha0_sup * base * base;
  r.eta_coupling_squared = 0.5 * nu * nu * r.alpha0_sup *
                           (r.alpha0_prime_sup * base) *
                           (r.alpha0_prime_sup * base);

  r.kappa = p.kappa;
  r.delta_star = d;
  r.M0 = p.M0;
  r.nu0 = p.nu0;
  r.T = s.T;
  r.tau = s.tau();
  r.nu = nu;
  r.eps = s.eps;
  r.L = s.L;
  r.measure = meas;
  return r;
}

}  // namespace kwc
