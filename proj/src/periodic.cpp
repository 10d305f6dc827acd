#include "kwc/periodic.hpp"

#include <cmath>

#include "kwc/operators.hpp"
#include "kwc/solver.hpp"

namespace kwc {

State period_map(const State& x0, const ForcingSchedule& f,
                 const SchemeParams& s, const ModelParams& p) {
  return run_trajectory(x0, f, s, p).terminal();
}

double state_distance_X(const State& a, const State& b) {
  const Grid& g = a.eta.grid();
  const double vol = g.cell_volume();
  double s = 0.0;
  for (int c = 0; c < a.eta.size(); ++c) {
    const double de = a.eta[c] - b.eta[c];
    const double dt = a.theta[c] - b.theta[c];
    s += de * de + dt * dt;
  }
  return std::sqrt(s * vol);
}

MembershipReport check_membership(const State& x, const ConstantsReport& c,
                                  double nu, double tau) {
  MembershipReport r;
  const double kap2 = c.kappa * c.kappa;
  const VectorField grad_eta = gradient(x.eta);
  const VectorField grad_theta = gradient(x.theta);
  const double grad_eta_sq = inner_product(grad_eta, grad_eta);
  const double grad_theta_sq = inner_product(grad_theta, grad_theta);

  r.sup_value = std::max(x.eta.linf(), x.theta.linf());
  r.sup_margin = c.R0 - r.sup_value;
  r.l2_value = inner_product(x.eta, x.eta) +
               c.R_star * inner_product(x.theta, x.theta) +
               kap2 * tau * grad_eta_sq;
  r.l2_margin = c.R1 - r.l2_value;
  r.energy_value = kap2 * grad_eta_sq +
                   c.delta_star * total_variation(x.theta) +
                   nu * nu * grad_theta_sq;
  r.energy_margin = c.R3 - r.energy_value;

  r.sup_ok = r.sup_margin >= 0.0;
  r.l2_ok = r.l2_margin >= 0.0;
  r.energy_ok = r.energy_margin >= 0.0;
  r.member = r.sup_ok && r.l2_ok && r.energy_ok;
  return r;
}

PeriodicSolution find_periodic(const ForcingSchedule& f, const SchemeParams& s,
                               const ModelParams& p, double relaxation,
                               const State& seed) {
  const Grid& grid = seed.eta.grid();
  const double tol = s.fp_tolerance(grid.measure());
  double lambda = relaxation;
  std::vector<double> history;
  State x = seed;
  x.step_index = 0;

  for (int k = 0; k < s.fp_max; ++k) {
    Trajectory traj = run_trajectory(x, f, s, p);
    const State& sx = traj.terminal();
    const double r = state_distance_X(sx, x);
    history.push_back(r);
    if (r <= tol) {
      PeriodicSolution sol;
      sol.fp_residual = r;
      sol.iterations = k + 1;
      sol.residual_history = std::move(history);
      const ConstantsReport consts =
          compute_constants(p, s, grid, f.R0, s.nu);
      sol.membership = check_membership(x, consts, s.nu, s.tau());
      sol.trajectory = std::move(traj);
      return sol;
    }
    if (k > 0 && r > history[static_cast<std::size_t>(k - 1)])
      lambda = std::max(0.5 * lambda, 1.0 / 16.0);
    for (int c = 0; c < x.eta.size(); ++c) {
      x.eta[c] = (1.0 - lambda) * x.eta[c] + lambda * sx.eta[c];
      x.theta[c] = (1.0 - lambda) * x.theta[c] + lambda * sx.theta[c];
    }
    x.step_index = 0;
  }
  const double last = history.empty() ? 0.0 : history.back();
  throw SolverError("find_periodic: Picard iteration did not converge", last,
                    s.fp_max, std::move(history));
}

std::vector<double> gronwall_bound(const GronwallInput& gi) {
  if (!(gi.Lambda > 0.0) || !(gi.tau > 0.0) || gi.A0 < 0.0 || gi.K < 0.0 ||
      gi.n < 0)
    throw std::invalid_argument("gronwall_bound: need A0, K >= 0 and Lambda, tau > 0");
  const double q = 1.0 / (1.0 + 2.0 * gi.tau * gi.Lambda);
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(gi.n));
  double qi = 1.0;
  for (int i = 1; i <= gi.n; ++i) {
    qi *= q;
    out.push_back(qi * gi.A0 + gi.K / gi.Lambda * (1.0 - qi));
  }
  return out;
}

XSequenceReport x_sequence(const Trajectory& traj, const ConstantsReport& c,
                           const SchemeParams& s) {
  XSequenceReport r;
  const double kap2 = c.kappa * c.kappa;
  const double tau = s.tau();
  const int m = traj.step_count();
  r.values.reserve(static_cast<std::size_t>(m + 1));
  r.itau_energy.reserve(static_cast<std::size_t>(m + 1));
  for (int i = 0; i <= m; ++i) {
    const State& st = traj.states[static_cast<std::size_t>(i)];
    const VectorField grad_eta = gradient(st.eta);
    r.values.push_back(inner_product(st.eta, st.eta) +
                       c.R_star * inner_product(st.theta, st.theta) +
                       kap2 * tau * inner_product(grad_eta, grad_eta));
    r.itau_energy.push_back(i * tau * traj.energy_at(i));
  }
  // tiny slack for the floating-point evaluation of exact inequalities
  const double slack_a = 1e-9 * (1.0 + c.R1);
  const double slack_b = 1e-9 * (1.0 + c.R2);
  r.hypothesis = r.values.front() <= c.R1 + slack_a;
  r.flag_a = true;
  r.flag_b = true;
  if (r.hypothesis) {
    for (int i = 1; i <= m; ++i) {
      if (r.values[static_cast<std::size_t>(i)] > c.R1 + slack_a)
        r.flag_a = false;
      if (r.itau_energy[static_cast<std::size_t>(i)] > c.R2 + slack_b)
        r.flag_b = false;
    }
  }
  return r;
}

}  // namespace kwc
