#ifndef KWC_STEPPER_HPP
#define KWC_STEPPER_HPP

#include <memory>
#include <utility>
#include <vector>

#include "kwc/coefficients.hpp"
#include "kwc/constants.hpp"
#include "kwc/forcing.hpp"
#include "kwc/grid.hpp"
#include "kwc/solver.hpp"

namespace kwc {

struct State {
  ScalarField eta, theta;
  int step_index = 0;

  State() = default;
  State(ScalarField e, ScalarField t, int idx = 0)
      : eta(std::move(e)), theta(std::move(t)), step_index(idx) {}
  static State zero(const Grid& g) {
    return State(ScalarField(g, 0.0), ScalarField(g, 0.0), 0);
  }
};

/// Per-step record: solver residuals, the free energy before/after, the two
/// sides of the one-step energy estimate, and sup-norms. dissipation_lhs
/// weights the theta increment with alpha0(eta_prev), which is the form the
/// estimate chain proves; dissipation_lhs_alpha restates it with the
/// alpha(eta_prev) weight and is reported without being asserted.
struct StepDiagnostics {
  double eta_residual = 0.0, theta_residual = 0.0;
  double energy_before = 0.0, energy_after = 0.0;
  double dissipation_lhs = 0.0, dissipation_rhs = 0.0;
  double dissipation_lhs_alpha = 0.0;
  double linf_eta = 0.0, linf_theta = 0.0;
  int newton_iters_eta = 0, newton_iters_theta = 0;
};

/// Minimizer of
///   J(theta) = (1/2 tau) sum alpha0(eta_prev) (theta - theta_prev)^2 vol
///            + Phi_{nu,eps}(eta_prev, theta) - inner(v_i, theta),
/// i.e. the implicit theta sub-step. Throws SolverError on nonconvergence.
ScalarField theta_step(const ScalarField& eta_prev,
                       const ScalarField& theta_prev, const ScalarField& v_i,
                       const SchemeParams& s, const ModelParams& p,
                       double* residual_out = nullptr, int* iters_out = nullptr);

/// Minimizer of
///   Psi0(eta) = (1/2 tau) |eta - eta_prev|_X^2
///             + (kappa^2/2) sum |grad eta|^2 vol + sum G(eta) vol
///             + sum alpha(eta) gamma_eps(grad theta_new) vol
///             - inner(u_i, eta).
ScalarField eta_step(const ScalarField& eta_prev, const ScalarField& theta_new,
                     const ScalarField& u_i, const SchemeParams& s,
                     const ModelParams& p, double* residual_out = nullptr,
                     int* iters_out = nullptr);

/// The sub-problem objectives themselves, for gradient checks and solver
/// diagnostics (inputs are copied, so temporaries are fine).
std::unique_ptr<ConvexObjective> make_theta_objective(
    const ScalarField& eta_prev, const ScalarField& theta_prev,
    const ScalarField& v_i, const SchemeParams& s, const ModelParams& p);
std::unique_ptr<ConvexObjective> make_eta_objective(const ScalarField& eta_prev,
                                                    const ScalarField& theta_new,
                                                    const ScalarField& u_i,
                                                    const SchemeParams& s,
                                                    const ModelParams& p);

/// One full step: theta first (coupled to eta_prev), then eta (coupled to
/// the new theta). R0 feeds the slack term of the energy estimate.
std::pair<State, StepDiagnostics> step(const State& state,
                                       const ScalarField& u_i,
                                       const ScalarField& v_i,
                                       const SchemeParams& s,
                                       const ModelParams& p, double R0);

struct Trajectory {
  std::vector<State> states;  // m + 1 entries including the initial state
  std::vector<StepDiagnostics> diagnostics;  // m entries
  double R0 = 0.0;

  int step_count() const { return static_cast<int>(diagnostics.size()); }
  const State& initial() const { return states.front(); }
  const State& terminal() const { return states.back(); }
  /// F_{nu,eps}(eta_i, theta_i), available for every i from the diagnostics.
  double energy_at(int i) const {
    return i == 0 ? diagnostics.front().energy_before
                  : diagnostics[static_cast<std::size_t>(i - 1)].energy_after;
  }
};

Trajectory run_trajectory(const State& state0, const ForcingSchedule& f,
                          const SchemeParams& s, const ModelParams& p);

}  // namespace kwc

#endif
