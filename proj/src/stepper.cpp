#include "kwc/stepper.hpp"

#include <cmath>
#include <stdexcept>

#include "kwc/functionals.hpp"
#include "kwc/operators.hpp"
#include "kwc/solver.hpp"

namespace kwc {

namespace {

// 2x2 symmetric per-cell matrix of the gamma_eps Hessian scaled by the
// frozen weight, plus nu^2 on the diagonal:
//   B = alpha(eta_prev) (I/gamma - y y^T / gamma^3) + nu^2 I, y = grad theta.
struct CellMatrix {
  double a00 = 0.0, a01 = 0.0, a11 = 0.0;
};

CellMatrix tv_hessian_block(double weight, const double* y, int dim,
                            double eps, double nu_sq) {
  const double gamma = gamma_eps(y, dim, eps);
  const double g3 = gamma * gamma * gamma;
  CellMatrix b;
  b.a00 = weight * (1.0 / gamma - y[0] * y[0] / g3) + nu_sq;
  if (dim == 2) {
    b.a01 = weight * (-y[0] * y[1] / g3);
    b.a11 = weight * (1.0 / gamma - y[1] * y[1] / g3) + nu_sq;
  }
  return b;
}

class ThetaObjective final : public ConvexObjective {
 public:
  ThetaObjective(const ScalarField& eta_prev, const ScalarField& theta_prev,
                 const ScalarField& v, const SchemeParams& s,
                 const ModelParams& p)
      : theta_prev_(theta_prev),
        v_(v),
        grid_(theta_prev.grid()),
        tau_(s.tau()),
        nu_sq_(s.nu * s.nu),
        eps_(s.eps),
        m0_(p.M0),
        a0_(eta_prev.grid()),
        aw_(eta_prev.grid()) {
    for (int c = 0; c < eta_prev.size(); ++c) {
      a0_[c] = p.alpha0(eta_prev[c]);
      aw_[c] = p.alpha(eta_prev[c]);
    }
  }

  double value(const ScalarField& x) const override {
    const VectorField grad = kwc::gradient(x);
    const double vol = grid_.cell_volume();
    double s = 0.0;
    for (int c = 0; c < x.size(); ++c) {
      const double dt = x[c] - theta_prev_[c];
      const double gn = grad.cell_norm(c);
      s += 0.5 / tau_ * a0_[c] * dt * dt +
           aw_[c] * std::sqrt(eps_ * eps_ + gn * gn) +
           0.5 * nu_sq_ * gn * gn + 0.5 * m0_ * x[c] * x[c] - v_[c] * x[c];
    }
    return s * vol;
  }

  void gradient(const ScalarField& x, ScalarField& out) const override {
    const VectorField grad = kwc::gradient(x);
    VectorField q(grid_);
    double y[2];
    for (int c = 0; c < x.size(); ++c) {
      for (int a = 0; a < grid_.dim; ++a) y[a] = grad.at(c, a);
      const double gamma = gamma_eps(y, grid_.dim, eps_);
      for (int a = 0; a < grid_.dim; ++a)
        q.at(c, a) = aw_[c] * y[a] / gamma + nu_sq_ * y[a];
    }
    const ScalarField div_q = divergence(q);
    for (int c = 0; c < x.size(); ++c)
      out[c] = a0_[c] / tau_ * (x[c] - theta_prev_[c]) + m0_ * x[c] - v_[c] -
               div_q[c];
  }

  void hess_apply(const ScalarField& at, const ScalarField& dir,
                  ScalarField& out) const override {
    const VectorField grad_at = kwc::gradient(at);
    const VectorField grad_d = kwc::gradient(dir);
    VectorField q(grid_);
    double y[2];
    for (int c = 0; c < at.size(); ++c) {
      for (int a = 0; a < grid_.dim; ++a) y[a] = grad_at.at(c, a);
      const CellMatrix b = tv_hessian_block(aw_[c], y, grid_.dim, eps_, nu_sq_);
      q.at(c, 0) = b.a00 * grad_d.at(c, 0);
      if (grid_.dim == 2) {
        q.at(c, 0) += b.a01 * grad_d.at(c, 1);
        q.at(c, 1) = b.a01 * grad_d.at(c, 0) + b.a11 * grad_d.at(c, 1);
      }
    }
    const ScalarField div_q = divergence(q);
    for (int c = 0; c < at.size(); ++c)
      out[c] = a0_[c] / tau_ * dir[c] + m0_ * dir[c] - div_q[c];
  }

  void hess_diag(const ScalarField& at, ScalarField& out) const override {
    const VectorField grad_at = kwc::gradient(at);
    for (int c = 0; c < at.size(); ++c) out[c] = a0_[c] / tau_ + m0_;
    double y[2];
    const int nx = grid_.cells[0];
    for (int j = 0; j < grid_.cells[1]; ++j) {
      for (int i = 0; i < nx; ++i) {
        const int c = grid_.index(i, j);
        for (int a = 0; a < grid_.dim; ++a) y[a] = grad_at.at(c, a);
        const CellMatrix b =
            tv_hessian_block(aw_[c], y, grid_.dim, eps_, nu_sq_);
        const bool vx = grid_.has_neighbor(i, j, 0);
        const bool vy = grid_.dim == 2 && grid_.has_neighbor(i, j, 1);
        const double sx = grid_.spacing[0], sy = grid_.spacing[1];
        if (vx) {
          out[c] += b.a00 / (sx * sx);
          out[c + 1] += b.a00 / (sx * sx);
        }
        if (vy) {
          out[c] += b.a11 / (sy * sy);
          out[c + nx] += b.a11 / (sy * sy);
        }
        if (vx && vy) out[c] += 2.0 * b.a01 / (sx * sy);
      }
    }
  }

 private:
  ScalarField theta_prev_;
  ScalarField v_;
  Grid grid_;
  double tau_, nu_sq_, eps_, m0_;
  ScalarField a0_, aw_;
};

class EtaObjective final : public ConvexObjective {
 public:
  EtaObjective(const ScalarField& eta_prev, const ScalarField& theta_new,
               const ScalarField& u, const SchemeParams& s,
               const ModelParams& p)
      : eta_prev_(eta_prev),
        u_(u),
        grid_(eta_prev.grid()),
        tau_(s.tau()),
        kappa_sq_(p.kappa * p.kappa),
        params_(p),
        gamma_(eta_prev.grid()) {
    // gamma_eps(grad theta_new) is frozen during the eta solve
    const VectorField grad = kwc::gradient(theta_new);
    for (int c = 0; c < gamma_.size(); ++c) {
      const double gn = grad.cell_norm(c);
      gamma_[c] = std::sqrt(s.eps * s.eps + gn * gn);
    }
  }

  double value(const ScalarField& x) const override {
    const VectorField grad = kwc::gradient(x);
    const double vol = grid_.cell_volume();
    double s = 0.0;
    for (int c = 0; c < x.size(); ++c) {
      const double de = x[c] - eta_prev_[c];
      s += 0.5 / tau_ * de * de + params_.G(x[c]) +
           params_.alpha(x[c]) * gamma_[c] - u_[c] * x[c];
    }
    s *= vol;
    return s + 0.5 * kappa_sq_ * inner_product(grad, grad);
  }

  void gradient(const ScalarField& x, ScalarField& out) const override {
    VectorField q = kwc::gradient(x);
    for (auto& w : q.values()) w *= kappa_sq_;
    const ScalarField div_q = divergence(q);
    for (int c = 0; c < x.size(); ++c)
      out[c] = (x[c] - eta_prev_[c]) / tau_ + params_.g(x[c]) +
               params_.dalpha(x[c]) * gamma_[c] - u_[c] - div_q[c];
  }

  void hess_apply(const ScalarField& at, const ScalarField& dir,
                  ScalarField& out) const override {
    VectorField q = kwc::gradient(dir);
    for (auto& w : q.values()) w *= kappa_sq_;
    const ScalarField div_q = divergence(q);
    for (int c = 0; c < at.size(); ++c)
      out[c] = (1.0 / tau_ + params_.dg(at[c]) +
                params_.ddalpha(at[c]) * gamma_[c]) *
                   dir[c] -
               div_q[c];
  }

  void hess_diag(const ScalarField& at, ScalarField& out) const override {
    for (int c = 0; c < at.size(); ++c)
      out[c] = 1.0 / tau_ + params_.dg(at[c]) +
               params_.ddalpha(at[c]) * gamma_[c];
    const int nx = grid_.cells[0];
    for (int j = 0; j < grid_.cells[1]; ++j) {
      for (int i = 0; i < nx; ++i) {
        const int c = grid_.index(i, j);
        if (grid_.has_neighbor(i, j, 0)) {
          const double w = kappa_sq_ / (grid_.spacing[0] * grid_.spacing[0]);
          out[c] += w;
          out[c + 1] += w;
        }
        if (grid_.dim == 2 && grid_.has_neighbor(i, j, 1)) {
          const double w = kappa_sq_ / (grid_.spacing[1] * grid_.spacing[1]);
          out[c] += w;
          out[c + nx] += w;
        }
      }
    }
  }

 private:
  ScalarField eta_prev_;
  ScalarField u_;
  Grid grid_;
  double tau_, kappa_sq_;
  ModelParams params_;
  ScalarField gamma_;
};

void require_same_grid(const ScalarField& a, const ScalarField& b,
                       const char* what) {
  if (a.grid() != b.grid())
    throw std::invalid_argument(std::string(what) + ": grid mismatch");
}

}  // namespace

std::unique_ptr<ConvexObjective> make_theta_objective(
    const ScalarField& eta_prev, const ScalarField& theta_prev,
    const ScalarField& v_i, const SchemeParams& s, const ModelParams& p) {
  return std::make_unique<ThetaObjective>(eta_prev, theta_prev, v_i, s, p);
}

std::unique_ptr<ConvexObjective> make_eta_objective(const ScalarField& eta_prev,
                                                    const ScalarField& theta_new,
                                                    const ScalarField& u_i,
                                                    const SchemeParams& s,
                                                    const ModelParams& p) {
  return std::make_unique<EtaObjective>(eta_prev, theta_new, u_i, s, p);
}

ScalarField theta_step(const ScalarField& eta_prev,
                       const ScalarField& theta_prev, const ScalarField& v_i,
                       const SchemeParams& s, const ModelParams& p,
                       double* residual_out, int* iters_out) {
  require_same_grid(eta_prev, theta_prev, "theta_step");
  require_same_grid(eta_prev, v_i, "theta_step");
  ThetaObjective obj(eta_prev, theta_prev, v_i, s, p);
  ScalarField x = theta_prev;
  const NewtonStats stats =
      newton_minimize(obj, x, s.newton_tol, s.cg_tol, s.newton_max, s.cg_max);
  if (residual_out) *residual_out = stats.grad_sup;
  if (iters_out) *iters_out = stats.iterations;
  return x;
}

ScalarField eta_step(const ScalarField& eta_prev, const ScalarField& theta_new,
                     const ScalarField& u_i, const SchemeParams& s,
                     const ModelParams& p, double* residual_out,
                     int* iters_out) {
  require_same_grid(eta_prev, theta_new, "eta_step");
  require_same_grid(eta_prev, u_i, "eta_step");
  EtaObjective obj(eta_prev, theta_new, u_i, s, p);
  ScalarField x = eta_prev;
  const NewtonStats stats =
      newton_minimize(obj, x, s.newton_tol, s.cg_tol, s.newton_max, s.cg_max);
  if (residual_out) *residual_out = stats.grad_sup;
  if (iters_out) *iters_out = stats.iterations;
  return x;
}

std::pair<State, StepDiagnostics> step(const State& state,
                                       const ScalarField& u_i,
                                       const ScalarField& v_i,
                                       const SchemeParams& s,
                                       const ModelParams& p, double R0) {
  StepDiagnostics d;
  d.energy_before = free_energy(state.eta, state.theta, s.nu, s.eps, p);

  ScalarField theta_new = theta_step(state.eta, state.theta, v_i, s, p,
                                     &d.theta_residual, &d.newton_iters_theta);
  ScalarField eta_new = eta_step(state.eta, theta_new, u_i, s, p,
                                 &d.eta_residual, &d.newton_iters_eta);

  d.energy_after = free_energy(eta_new, theta_new, s.nu, s.eps, p);
  const double vol = state.eta.grid().cell_volume();
  const double tau = s.tau();
  double de_sq = 0.0, dt_a0 = 0.0, dt_a = 0.0;
  for (int c = 0; c < eta_new.size(); ++c) {
    const double de = eta_new[c] - state.eta[c];
    const double dt = theta_new[c] - state.theta[c];
    de_sq += de * de;
    dt_a0 += p.alpha0(state.eta[c]) * dt * dt;
    dt_a += p.alpha(state.eta[c]) * dt * dt;
  }
  d.dissipation_lhs =
      (0.5 / tau) * (de_sq + dt_a0) * vol + d.energy_after;
  d.dissipation_lhs_alpha =
      (0.5 / tau) * (de_sq + dt_a) * vol + d.energy_after;
  d.dissipation_rhs =
      d.energy_before +
      tau * R0 * R0 * state.eta.grid().measure() *
          (1.0 + 1.0 / (2.0 * p.delta_star * p.delta_star));
  d.linf_eta = eta_new.linf();
  d.linf_theta = theta_new.linf();

  State next(std::move(eta_new), std::move(theta_new), state.step_index + 1);
  return {std::move(next), d};
}

Trajectory run_trajectory(const State& state0, const ForcingSchedule& f,
                          const SchemeParams& s, const ModelParams& p) {
  if (f.steps() != s.m)
    throw std::invalid_argument("run_trajectory: forcing has wrong step count");
  if (!state0.eta.all_finite() || !state0.theta.all_finite())
    throw std::invalid_argument("run_trajectory: non-finite initial state");
  Trajectory traj;
  traj.R0 = f.R0;
  traj.states.reserve(s.m + 1);
  traj.diagnostics.reserve(s.m);
  traj.states.push_back(state0);
  traj.states.front().step_index = 0;
  for (int i = 1; i <= s.m; ++i) {
    auto [next, diag] = step(traj.states.back(), f.u_steps[i - 1],
                             f.v_steps[i - 1], s, p, f.R0);
    traj.states.push_back(std::move(next));
    traj.diagnostics.push_back(diag);
  }
  return traj;
}

}  // namespace kwc
