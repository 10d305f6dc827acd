#ifndef KWC_PERIODIC_HPP
#define KWC_PERIODIC_HPP

#include <vector>

#include "kwc/constants.hpp"
#include "kwc/stepper.hpp"

namespace kwc {

/// Terminal state of the m-step trajectory started at x0; fixed points of
/// this map are the periodic solutions of the discrete scheme.
State period_map(const State& x0, const ForcingSchedule& f,
                 const SchemeParams& s, const ModelParams& p);

/// X-norm distance of the state pair, sqrt(|d eta|_X^2 + |d theta|_X^2).
double state_distance_X(const State& a, const State& b);

/// The three bullets of the invariant class: sup-norm radius R0, the
/// weighted L2 bound by R1, the gradient/TV energy bound by R3. Margins are
/// bound minus value (nonnegative means satisfied).
struct MembershipReport {
  bool member = false;
  bool sup_ok = false, l2_ok = false, energy_ok = false;
  double sup_value = 0.0, sup_margin = 0.0;
  double l2_value = 0.0, l2_margin = 0.0;
  double energy_value = 0.0, energy_margin = 0.0;
};

MembershipReport check_membership(const State& x, const ConstantsReport& c,
                                  double nu, double tau);

struct PeriodicSolution {
  Trajectory trajectory;
  double fp_residual = 0.0;
  int iterations = 0;
  MembershipReport membership;
  std::vector<double> residual_history;
};

/// Damped Picard iteration x <- (1 - lambda) x + lambda S(x) on the period
/// map, with lambda halved whenever the residual grows (floor 1/16).
/// Stops when the X-norm residual drops below fp_tol; throws SolverError
/// carrying the residual history if the iteration cap is exceeded.
PeriodicSolution find_periodic(const ForcingSchedule& f, const SchemeParams& s,
                               const ModelParams& p, double relaxation,
                               const State& seed);

struct GronwallInput {
  double A0 = 0.0;      // nonnegative
  double Lambda = 1.0;  // positive
  double K = 0.0;       // nonnegative
  double tau = 0.0;     // positive
  int n = 0;
};

/// Closed-form dominating sequence
///   B_i = q^i A0 + (K/Lambda)(1 - q^i),  q = 1/(1 + 2 tau Lambda),
/// for i = 1..n: any sequence obeying
///   (1/2tau)(A_i - A_{i-1}) + Lambda A_i <= K   obeys A_i <= B_i.
std::vector<double> gronwall_bound(const GronwallInput& gi);

/// Diagnostic sequence X_i = |eta_i|_X^2 + R_star |theta_i|_X^2
/// + kappa^2 tau |grad eta_i|_X^2, with the two a-priori verification
/// flags (each an implication from X_0 <= R1).
struct XSequenceReport {
  std::vector<double> values;   // X_0 .. X_m
  std::vector<double> itau_energy;  // i tau F(eta_i, theta_i), i = 0..m
  bool hypothesis = false;      // X_0 <= R1
  bool flag_a = false;          // X_0 <= R1  =>  X_i <= R1 for all i
  bool flag_b = false;          // X_0 <= R1  =>  i tau F_i <= R2 for all i
};

XSequenceReport x_sequence(const Trajectory& traj, const ConstantsReport& c,
                           const SchemeParams& s);

}  // namespace kwc

#endif
