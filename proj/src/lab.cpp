#include "kwc/lab.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "kwc/functionals.hpp"
#include "kwc/operators.hpp"
#include "kwc/solver.hpp"

namespace kwc {

RefinementPlan RefinementPlan::dyadic(const ModelParams& p, int levels, int m0,
                                      int m_cap) {
  RefinementPlan plan;
  for (int n = 1; n <= levels; ++n) {
    const double pow2 = std::pow(2.0, -n);
    plan.eps_seq.push_back(pow2);
    plan.nu_seq.push_back(p.nu0 + pow2);
    plan.m_seq.push_back(std::min(m_cap, m0 << n));
  }
  return plan;
}

namespace {

// linear time interpolant of a trajectory at t in [0, T]
void interpolate_state(const Trajectory& traj, double t, double T,
                       ScalarField& eta, ScalarField& theta) {
  const int m = traj.step_count();
  const double tau = T / m;
  int i = static_cast<int>(std::floor(t / tau));
  i = std::clamp(i, 0, m - 1);
  const double w = (t - i * tau) / tau;
  const State& lo = traj.states[static_cast<std::size_t>(i)];
  const State& hi = traj.states[static_cast<std::size_t>(i + 1)];
  for (int c = 0; c < eta.size(); ++c) {
    eta[c] = (1.0 - w) * lo.eta[c] + w * hi.eta[c];
    theta[c] = (1.0 - w) * lo.theta[c] + w * hi.theta[c];
  }
}

}  // namespace

double trajectory_distance_time_X(const Trajectory& a, const Trajectory& b,
                                  double T) {
  const Grid& g = a.initial().eta.grid();
  std::vector<double> breaks;
  for (int i = 0; i <= a.step_count(); ++i)
    breaks.push_back(T * i / a.step_count());
  for (int i = 0; i <= b.step_count(); ++i)
    breaks.push_back(T * i / b.step_count());
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

  ScalarField ea(g), ta(g), eb(g), tb(g);
  auto sq_dist = [&](double t) {
    interpolate_state(a, t, T, ea, ta);
    interpolate_state(b, t, T, eb, tb);
    double s = 0.0;
    for (int c = 0; c < ea.size(); ++c) {
      const double de = ea[c] - eb[c];
      const double dt = ta[c] - tb[c];
      s += de * de + dt * dt;
    }
    return s * g.cell_volume();
  };

  // integrand is piecewise quadratic in t, so Simpson per subinterval is exact
  double integral = 0.0;
  for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
    const double s = breaks[k], e = breaks[k + 1];
    integral +=
        (e - s) / 6.0 * (sq_dist(s) + 4.0 * sq_dist(0.5 * (s + e)) + sq_dist(e));
  }
  return std::sqrt(integral);
}

ConvergenceReport refine_study(const RefinementPlan& plan, const Grid& grid,
                               const Waveform& u, const Waveform& v,
                               const ModelParams& p, const SchemeParams& base,
                               const State& seed) {
  ConvergenceReport report;
  std::vector<int> solved_levels;

  for (int n = 0; n < plan.levels(); ++n) {
    SchemeParams s = base;
    s.nu = plan.nu_seq[static_cast<std::size_t>(n)];
    s.eps = plan.eps_seq[static_cast<std::size_t>(n)];
    s.m = plan.m_seq[static_cast<std::size_t>(n)];

    LevelResult level;
    level.nu = s.nu;
    level.eps = s.eps;
    level.m = s.m;
    try {
      if (!(s.eps > 0.0 && s.eps < 1.0))
        throw std::invalid_argument("refine level violates (A6): eps not in (0,1)");
      if (!(s.nu > 0.0 && s.nu <= p.nu0 + 1.0))
        throw std::invalid_argument(
            "refine level violates (A6): nu not in (0, nu0 + 1]");
      if (!(s.m > 4.0 * s.T * (p.dg_sup() + 1.0)))
        throw std::invalid_argument("refine level violates (A5): m too small");
      const ForcingSchedule f = ForcingSchedule::from_waveforms(
          grid, u, v, s, p, std::max(seed.eta.linf(), seed.theta.linf()));
      PeriodicSolution sol = find_periodic(f, s, p, s.relaxation, seed);
      const ConstantsReport c = compute_constants(p, s, grid, f.R0, s.nu);

      level.solved = true;
      level.fp_residual = sol.fp_residual;
      level.iterations = sol.iterations;
      const Trajectory& traj = sol.trajectory;
      const double tau = s.tau();
      double tv_sum = 0.0, max_e = 0.0;
      for (int i = 1; i <= s.m; ++i) {
        tv_sum += total_variation(traj.states[static_cast<std::size_t>(i)].theta);
        max_e = std::max(max_e, i * tau * traj.energy_at(i));
      }
      level.time_tv = tau * tv_sum;
      level.terminal_energy = traj.energy_at(s.m);
      level.max_itau_energy = max_e;
      level.tv_bound = c.R3 / c.delta_star;
      level.energy_bound = c.R2;
      const double slack = 1e-9;
      level.within_bounds =
          level.max_itau_energy <= c.R2 * (1.0 + slack) &&
          tau * tv_sum <= s.T * level.tv_bound * (1.0 + slack);

      solved_levels.push_back(static_cast<int>(report.solutions.size()));
      report.solutions.push_back(std::move(sol));
    } catch (const std::exception& err) {
      level.solved = false;
      level.error = err.what();
      report.solutions.emplace_back();
    }
    report.levels.push_back(std::move(level));
  }

  for (std::size_t k = 0; k + 1 < solved_levels.size(); ++k) {
    const auto& ta =
        report.solutions[static_cast<std::size_t>(solved_levels[k])].trajectory;
    const auto& tb =
        report.solutions[static_cast<std::size_t>(solved_levels[k + 1])]
            .trajectory;
    report.successive_distances.push_back(
        trajectory_distance_time_X(ta, tb, base.T));
  }
  report.cauchy_trend = !report.successive_distances.empty();
  for (std::size_t k = 0; k + 1 < report.successive_distances.size(); ++k)
    if (report.successive_distances[k + 1] >
        report.successive_distances[k] * (1.0 + 1e-9))
      report.cauchy_trend = false;
  return report;
}

MoscoReport mosco_diagnostic(const std::vector<ScalarField>& eta_seq,
                             const ScalarField& eta_lim,
                             const ScalarField& theta_probe,
                             const std::vector<double>& nu_seq,
                             const std::vector<double>& eps_seq, double nu_lim,
                             double eps_lim, const ModelParams& p) {
  MoscoReport rep;
  const Grid& g = eta_lim.grid();
  const double meas = g.measure();
  const double phi_lim = phi_nu_eps(eta_lim, theta_probe, nu_lim, eps_lim, p);

  double range = eta_lim.linf();
  double alpha_sup_seq = 0.0;
  for (const auto& e : eta_seq) {
    range = std::max(range, e.linf());
    alpha_sup_seq =
        std::max(alpha_sup_seq, p.alpha_family.sup_on(e.linf()));
  }
  const double lip_alpha = p.alpha_family.d1_sup_on(range);

  const VectorField grad_theta = gradient(theta_probe);
  const double vol = g.cell_volume();
  double eps_plus_grad_sq = 0.0, grad_sq = 0.0;
  for (int c = 0; c < theta_probe.size(); ++c) {
    const double gn = grad_theta.cell_norm(c);
    eps_plus_grad_sq += (eps_lim + gn) * (eps_lim + gn);
    grad_sq += gn * gn;
  }
  eps_plus_grad_sq *= vol;
  grad_sq *= vol;

  rep.all_within = true;
  for (std::size_t n = 0; n < eta_seq.size(); ++n) {
    const double phi_n =
        phi_nu_eps(eta_seq[n], theta_probe, nu_seq[n], eps_seq[n], p);
    const double diff = std::abs(phi_n - phi_lim);

    ScalarField d(g);
    for (int c = 0; c < d.size(); ++c) d[c] = eta_seq[n][c] - eta_lim[c];
    const double bound =
        std::abs(eps_seq[n] - eps_lim) * alpha_sup_seq * meas +
        lip_alpha * norm_X(d) * std::sqrt(eps_plus_grad_sq) +
        0.5 * std::abs(nu_seq[n] * nu_seq[n] - nu_lim * nu_lim) * grad_sq;

    rep.difference.push_back(diff);
    rep.bound.push_back(bound);
    if (diff > bound * (1.0 + 1e-12) + 1e-13) rep.all_within = false;
  }
  return rep;
}

ScalarField smooth_profile(const Grid& grid) {
  // half-period cosine: sup-norm 1, nonvanishing at cell centers
  ScalarField f(grid);
  for (int j = 0; j < grid.cells[1]; ++j) {
    for (int i = 0; i < grid.cells[0]; ++i) {
      const double x = (i + 0.5) / grid.cells[0];
      double v = std::cos(0.5 * std::numbers::pi * x);
      if (grid.dim == 2) {
        const double y = (j + 0.5) / grid.cells[1];
        v *= std::cos(0.5 * std::numbers::pi * y);
      }
      f[grid.index(i, j)] = v;
    }
  }
  return f;
}

DependenceProbeResult continuous_dependence_probe(
    const Grid& grid, const ModelParams& p, const SchemeParams& s,
    const Waveform& u, const Waveform& v, const State& base_state,
    const std::vector<double>& deltas) {
  DependenceProbeResult res;
  res.deltas = deltas;
  double delta_max = 0.0;
  for (double d : deltas) delta_max = std::max(delta_max, d);

  const double data_sup =
      std::max(base_state.eta.linf(), base_state.theta.linf()) + delta_max;
  // one radius covering base and every perturbed instance
  const double R0 = compute_R0(u.sup(s.m, s.T) + delta_max,
                               v.sup(s.m, s.T) + delta_max, data_sup, p);
  const ScalarField profile = smooth_profile(grid);

  auto make_schedule = [&](double delta) {
    std::vector<ScalarField> us, vs;
    us.reserve(s.m);
    vs.reserve(s.m);
    for (int i = 1; i <= s.m; ++i) {
      ScalarField ui(grid, u.step_average(i, s.m, s.T));
      ScalarField vi(grid, v.step_average(i, s.m, s.T));
      for (int c = 0; c < ui.size(); ++c) {
        ui[c] += delta * profile[c];
        vi[c] += delta * profile[c];
      }
      us.push_back(std::move(ui));
      vs.push_back(std::move(vi));
    }
    return ForcingSchedule::from_fields(std::move(us), std::move(vs), R0, p);
  };

  const Trajectory base = run_trajectory(base_state, make_schedule(0.0), s, p);

  for (double delta : deltas) {
    State perturbed = base_state;
    for (int c = 0; c < perturbed.eta.size(); ++c) {
      perturbed.eta[c] += delta * profile[c];
      perturbed.theta[c] += delta * profile[c];
    }
    const ForcingSchedule f = make_schedule(delta);
    const Trajectory traj = run_trajectory(perturbed, f, s, p);

    double eta_d = 0.0, theta_d = 0.0;
    for (int i = 0; i <= s.m; ++i) {
      const State& a = traj.states[static_cast<std::size_t>(i)];
      const State& b = base.states[static_cast<std::size_t>(i)];
      ScalarField de(grid), dt(grid);
      for (int c = 0; c < de.size(); ++c) {
        de[c] = a.eta[c] - b.eta[c];
        dt[c] = a.theta[c] - b.theta[c];
      }
      const VectorField gde = gradient(de);
      eta_d = std::max(eta_d, std::sqrt(inner_product(de, de) +
                                        inner_product(gde, gde)));
      theta_d = std::max(theta_d, norm_X(dt));
    }
    res.eta_distance_H1.push_back(eta_d);
    res.theta_distance_X.push_back(theta_d);
    res.admissible.push_back(f.in_class_Z);
  }

  res.distances_decrease = true;
  for (std::size_t k = 0; k + 1 < deltas.size(); ++k) {
    if (deltas[k + 1] < deltas[k]) {
      if (res.eta_distance_H1[k + 1] > res.eta_distance_H1[k] * (1.0 + 1e-9) ||
          res.theta_distance_X[k + 1] > res.theta_distance_X[k] * (1.0 + 1e-9))
        res.distances_decrease = false;
    }
  }
  return res;
}

}  // namespace kwc
