// Period map, invariant-class membership, the Picard fixed point against
// closed-form orbits of the scalar recursion, the discrete Gronwall bound,
// and the X_i diagnostic sequence.

#include <cmath>
#include <random>

#include "kwc/functionals.hpp"
#include "kwc/operators.hpp"
#include "kwc/periodic.hpp"
#include "kwc/solver.hpp"
#include "support/checks.hpp"

using namespace kwc;

namespace {

std::mt19937_64 rng(909090);
double uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

ScalarField smooth_random(const Grid& g, double bound) {
  // low-frequency cosine mix, sup-norm <= bound
  const double a1 = uniform(-1.0, 1.0), a2 = uniform(-1.0, 1.0),
               a3 = uniform(-1.0, 1.0);
  ScalarField f(g);
  for (int c = 0; c < f.size(); ++c) {
    const double x = (c % g.cells[0] + 0.5) / g.cells[0];
    const double y = g.dim == 2 ? (c / g.cells[0] + 0.5) / g.cells[1] : 0.0;
    const double pi = 3.14159265358979323846;
    f[c] = bound / 3.0 *
           (a1 * std::cos(pi * x) + a2 * std::cos(2.0 * pi * x) +
            a3 * std::cos(pi * y));
  }
  return f;
}

void period_map_checks() {
  ModelParams p;
  SchemeParams s;
  s.m = 16;
  Grid g = Grid::line(24, 1.0);

  ForcingSchedule f0 = ForcingSchedule::from_waveforms(
      g, Waveform::constant(0.0), Waveform::constant(0.0), s, p);
  const State out = period_map(State::zero(g), f0, s, p);
  CHECK(out.eta.linf() <= 1e-12 && out.theta.linf() <= 1e-12,
        "zero forcing fixes the zero state");

  // self-mapping on sampled members of the invariant class
  ForcingSchedule f = ForcingSchedule::from_waveforms(
      g, Waveform::sinusoid(0.3), Waveform::constant(0.1), s, p, 0.45);
  const ConstantsReport c = compute_constants(p, s, g, f.R0, s.nu);
  int members = 0;
  for (int rep = 0; rep < 100; ++rep) {
    State x(smooth_random(g, 0.4), smooth_random(g, 0.4));
    const MembershipReport before = check_membership(x, c, s.nu, s.tau());
    if (!before.member) continue;
    ++members;
    const State sx = period_map(x, f, s, p);
    const MembershipReport after = check_membership(sx, c, s.nu, s.tau());
    const double tol = 1e-7;
    CHECK(after.sup_value <= c.R0 + tol && after.l2_value <= c.R1 + tol &&
              after.energy_value <= c.R3 + tol,
          "period map self-maps the invariant class");
  }
  CHECK(members >= 90, "sampling actually produced class members");

  // continuity: halving the perturbation halves the image distance
  State base(smooth_random(g, 0.3), smooth_random(g, 0.3));
  const State s_base = period_map(base, f, s, p);
  const ScalarField bump = smooth_random(g, 0.01);
  auto perturbed_distance = [&](double scale) {
    State x = base;
    for (int cidx = 0; cidx < x.eta.size(); ++cidx) {
      x.eta[cidx] += scale * bump[cidx];
      x.theta[cidx] += scale * bump[cidx];
    }
    return state_distance_X(period_map(x, f, s, p), s_base);
  };
  const double d1 = perturbed_distance(1.0);
  const double d2 = perturbed_distance(0.5);
  CHECK(d2 <= 0.55 * d1 + 1e-12, "image distance scales with the data");
}

void membership_checks() {
  ModelParams p;
  SchemeParams s;
  s.m = 16;
  Grid g2 = Grid::line(2, 1.0);
  const double R0 = 0.5;
  const ConstantsReport c = compute_constants(p, s, g2, R0, s.nu);

  const MembershipReport zero =
      check_membership(State::zero(g2), c, s.nu, s.tau());
  CHECK(zero.member, "zero state belongs to the class");

  State big(ScalarField(g2, R0 + 1.0), ScalarField(g2, 0.0));
  const MembershipReport over = check_membership(big, c, s.nu, s.tau());
  CHECK(!over.sup_ok && !over.member, "sup-norm violation breaks membership");

  // hand evaluation on a two-cell state (h = 1/2)
  State x = State::zero(g2);
  x.eta[0] = 0.3;
  x.eta[1] = -0.1;
  x.theta[0] = 0.2;
  x.theta[1] = 0.4;
  const MembershipReport r = check_membership(x, c, s.nu, s.tau());
  const double eta_sq = (0.09 + 0.01) * 0.5;
  const double theta_sq = (0.04 + 0.16) * 0.5;
  const double grad_eta_sq = 0.64 * 0.5;  // ((-0.4)/0.5)^2 over one cell
  const double grad_theta_sq = 0.16 * 0.5;
  const double tv = 0.4 * 0.5;
  CHECK_NEAR(r.sup_value, 0.4, 1e-15, "two-cell sup value");
  CHECK_NEAR(r.l2_value,
             eta_sq + c.R_star * theta_sq +
                 p.kappa * p.kappa * s.tau() * grad_eta_sq,
             1e-14, "two-cell weighted L2 value");
  CHECK_NEAR(r.energy_value,
             p.kappa * p.kappa * grad_eta_sq + p.delta_star * tv +
                 s.nu * s.nu * grad_theta_sq,
             1e-14, "two-cell energy value");
  CHECK_NEAR(r.l2_margin, c.R1 - r.l2_value, 1e-12, "margin arithmetic");
}

void find_periodic_checks() {
  ModelParams p;

  // zero forcing: one Picard evaluation, zero residual
  {
    SchemeParams s;
    s.m = 16;
    Grid g = Grid::line(16, 1.0);
    ForcingSchedule f = ForcingSchedule::from_waveforms(
        g, Waveform::constant(0.0), Waveform::constant(0.0), s, p);
    const PeriodicSolution sol =
        find_periodic(f, s, p, s.relaxation, State::zero(g));
    CHECK(sol.iterations <= 2 && sol.fp_residual <= 1e-12,
          "zero forcing converges immediately");
    CHECK(sol.trajectory.terminal().eta.linf() <= 1e-12,
          "zero periodic solution");
    CHECK(sol.membership.member, "zero solution belongs to the class");
  }

  // constant forcing on a single cell: the steady state is the fixed point
  {
    Grid one = Grid::single_cell();
    SchemeParams s;
    s.m = 16;
    s.fp_tol = 1e-11;
    const double cval = 0.3;
    ForcingSchedule f = ForcingSchedule::from_waveforms(
        one, Waveform::constant(cval), Waveform::constant(0.0), s, p);
    const PeriodicSolution sol =
        find_periodic(f, s, p, s.relaxation, State::zero(one));
    const double steady = cval / (1.0 + p.alpha_family.c * s.eps);
    CHECK_NEAR(sol.trajectory.initial().eta[0], steady, 1e-9,
               "constant forcing fixed point is the steady state");
    CHECK(std::abs(sol.trajectory.initial().theta[0]) <= 1e-10, "theta* = 0");
  }

  // sinusoidal zero-mean forcing: affine scalar recursion orbit
  {
    Grid one = Grid::single_cell();
    SchemeParams s;
    s.m = 32;
    s.fp_tol = 1e-10;
    const double A = 0.4;
    ForcingSchedule f = ForcingSchedule::from_waveforms(
        one, Waveform::sinusoid(A), Waveform::constant(0.0), s, p, 0.5);
    const PeriodicSolution sol =
        find_periodic(f, s, p, s.relaxation, State::zero(one));
    CHECK(sol.fp_residual <= 1e-8, "fixed-point residual within tolerance");

    const double tau = s.tau();
    const double a = 1.0 / (1.0 + tau * (1.0 + p.alpha_family.c * s.eps));
    const double b = tau * a;
    double weighted = 0.0;
    for (int i = 1; i <= s.m; ++i)
      weighted = a * weighted + b * f.u_steps[i - 1][0];
    const double eta0_star = weighted / (1.0 - std::pow(a, s.m));
    double orbit = eta0_star;
    CHECK_NEAR(sol.trajectory.initial().eta[0], eta0_star, 1e-8,
               "closed-form periodic orbit start");
    for (int i = 1; i <= s.m; ++i) {
      orbit = a * orbit + b * f.u_steps[i - 1][0];
      CHECK_NEAR(sol.trajectory.states[i].eta[0], orbit, 1e-8,
                 "closed-form orbit step");
    }
    CHECK(std::abs(sol.trajectory.terminal().eta[0] -
                   sol.trajectory.initial().eta[0]) <= 2.0 * 1e-10,
          "endpoints agree to the fixed-point tolerance");

    // Picard iterates and the final trajectory stay admissible
    bool bounded = true;
    for (const auto& st : sol.trajectory.states)
      bounded = bounded &&
                std::max(st.eta.linf(), st.theta.linf()) <= f.R0 + 1e-8;
    CHECK(bounded, "periodic trajectory confined to [-R0, R0]");
  }

  // nonconvergence carries the residual history
  {
    Grid g = Grid::line(8, 1.0);
    SchemeParams s;
    s.m = 16;
    s.fp_max = 2;
    s.fp_tol = 1e-16;
    ForcingSchedule f = ForcingSchedule::from_waveforms(
        g, Waveform::sinusoid(0.4), Waveform::constant(0.0), s, p);
    bool threw = false;
    try {
      find_periodic(f, s, p, 1.0, State::zero(g));
    } catch (const SolverError& e) {
      threw = e.residual_history.size() == 2 && e.residual > 0.0;
    }
    CHECK(threw, "Picard cap surfaces the residual history");
  }
}

void gronwall_checks() {
  // K = 0: pure geometric decay
  GronwallInput gi{2.0, 0.7, 0.0, 0.05, 6};
  const auto b = gronwall_bound(gi);
  const double q = 1.0 / (1.0 + 2.0 * gi.tau * gi.Lambda);
  double qi = 1.0;
  for (int i = 0; i < gi.n; ++i) {
    qi *= q;
    CHECK_NEAR(b[i], gi.A0 * qi, 1e-15, "geometric decay when K = 0");
  }

  GronwallInput zero{0.0, 1.0, 0.0, 0.1, 5};
  for (double v : gronwall_bound(zero)) CHECK(v == 0.0, "all zeros");

  bool threw = false;
  try {
    gronwall_bound(GronwallInput{1.0, -0.5, 0.0, 0.1, 3});
  } catch (const std::invalid_argument&) {
    threw = true;
  }
  CHECK(threw, "invalid decay rate rejected");

  // equality recursion reproduces the bound exactly; slack keeps it below
  for (int rep = 0; rep < 200; ++rep) {
    GronwallInput g;
    g.A0 = uniform(0.0, 5.0);
    g.Lambda = uniform(0.05, 3.0);
    g.K = uniform(0.0, 2.0);
    g.tau = uniform(0.001, 0.12);
    g.n = 1 + static_cast<int>(uniform(1.0, 40.0));
    const auto bound = gronwall_bound(g);
    double a_eq = g.A0, a_sl = g.A0;
    for (int i = 1; i <= g.n; ++i) {
      // (1/2tau)(A_i - A_{i-1}) + Lambda A_i = K, solved for A_i
      a_eq = (a_eq / (2.0 * g.tau) + g.K) / (1.0 / (2.0 * g.tau) + g.Lambda);
      a_sl = (a_sl / (2.0 * g.tau) + g.K) /
             (1.0 / (2.0 * g.tau) + g.Lambda) * uniform(0.0, 1.0);
      CHECK(a_eq <= bound[i - 1] * (1.0 + 1e-12) + 1e-15 &&
                bound[i - 1] <= a_eq * (1.0 + 1e-12) + 1e-15,
            "equality recursion meets the bound");
      CHECK(a_sl <= bound[i - 1] * (1.0 + 1e-12) + 1e-15,
            "slack recursion dominated");
    }
  }
}

void x_sequence_checks() {
  ModelParams p;
  SchemeParams s;
  s.m = 16;
  Grid g = Grid::line(16, 1.0);

  ForcingSchedule f0 = ForcingSchedule::from_waveforms(
      g, Waveform::constant(0.0), Waveform::constant(0.0), s, p);
  Trajectory tz = run_trajectory(State::zero(g), f0, s, p);
  const ConstantsReport c0 = compute_constants(p, s, g, 0.3, s.nu);
  const XSequenceReport xz = x_sequence(tz, c0, s);
  bool zeros = xz.hypothesis && xz.flag_a && xz.flag_b;
  for (double v : xz.values) zeros = zeros && std::abs(v) <= 1e-20;
  CHECK(zeros, "zero trajectory gives the zero sequence and both flags");

  // admissible random trajectory: flag (a) plus Gronwall dominance
  ForcingSchedule f = ForcingSchedule::from_waveforms(
      g, Waveform::sinusoid(0.35), Waveform::constant(0.15), s, p, 0.5);
  const ConstantsReport c = compute_constants(p, s, g, f.R0, s.nu);
  for (int rep = 0; rep < 10; ++rep) {
    State seed(smooth_random(g, 0.45), smooth_random(g, 0.45));
    Trajectory traj = run_trajectory(seed, f, s, p);
    const XSequenceReport xs = x_sequence(traj, c, s);
    CHECK(xs.hypothesis, "X_0 within R1 for smooth admissible data");
    CHECK(xs.flag_a && xs.flag_b, "both a-priori flags hold");

    const double tau = s.tau();
    GronwallInput gi{xs.values[0], c.C5, c.C3, tau, s.m};
    const auto dominating = gronwall_bound(gi);
    for (int i = 1; i <= s.m; ++i) {
      const double recur =
          (xs.values[i] - xs.values[i - 1]) / (2.0 * tau) + c.C5 * xs.values[i];
      CHECK(recur <= c.C3 + 1e-7 * (1.0 + c.C3),
            "the C5/C3 recurrence holds along the trajectory");
      CHECK(xs.values[i] <= dominating[i - 1] * (1.0 + 1e-9) + 1e-12,
            "X_i dominated by the Gronwall bound");
    }
  }

  // two-cell hand evaluation of X_i
  Grid g2 = Grid::line(2, 1.0);
  SchemeParams s2;
  s2.m = 1;
  ForcingSchedule f2 = ForcingSchedule::from_waveforms(
      g2, Waveform::constant(0.2), Waveform::constant(0.1), s2, p, 0.45);
  State seed2 = State::zero(g2);
  seed2.eta[0] = 0.3;
  seed2.eta[1] = -0.1;
  seed2.theta[0] = 0.2;
  seed2.theta[1] = 0.4;
  Trajectory t2 = run_trajectory(seed2, f2, s2, p);
  const ConstantsReport c2 = compute_constants(p, s2, g2, f2.R0, s2.nu);
  const XSequenceReport x2 = x_sequence(t2, c2, s2);
  const double hand0 = (0.09 + 0.01) * 0.5 + c2.R_star * (0.04 + 0.16) * 0.5 +
                       p.kappa * p.kappa * s2.tau() * 0.64 * 0.5;
  CHECK_NEAR(x2.values[0], hand0, 1e-14, "hand-evaluated X_0 on two cells");
  const State& st1 = t2.states[1];
  const double ge1 = (st1.eta[1] - st1.eta[0]) / 0.5;
  const double hand1 =
      (st1.eta[0] * st1.eta[0] + st1.eta[1] * st1.eta[1]) * 0.5 +
      c2.R_star * (st1.theta[0] * st1.theta[0] + st1.theta[1] * st1.theta[1]) *
          0.5 +
      p.kappa * p.kappa * s2.tau() * ge1 * ge1 * 0.5;
  CHECK_NEAR(x2.values[1], hand1, 1e-14, "hand-evaluated X_1 on two cells");
}

}  // namespace

int main() {
  period_map_checks();
  membership_checks();
  find_periodic_checks();
  gronwall_checks();
  x_sequence_checks();
  return kwc_test::summary("periodic");
}
