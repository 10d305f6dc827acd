#ifndef KWC_COEFFICIENTS_HPP
#define KWC_COEFFICIENTS_HPP

#include <string>
#include <vector>

namespace kwc {

/// Lipschitz coercive reaction term g with nonnegative primitive G.
/// Families:
///   linear       g(x) = x,              G(x) = x^2/2
///   double_well  g(x) = x + a sin(b x), G(x) = x^2/2 + (a/b)(1 - cos(b x))
/// Both have g(0) = 0 and G(0) = 0; the double well needs a, b > 0.
struct GFamily {
  enum class Kind { linear, double_well };
  Kind kind = Kind::linear;
  double a = 2.0;
  double b = 3.0;

  double g(double x) const;
  double G(double x) const;
  double dg(double x) const;
  /// |g'|_{L^inf(R)}, analytic.
  double dg_sup() const;
  std::string name() const;

  static GFamily parse(const std::string& name, double a, double b);
};

/// Mobility weight of the quadratic family s0 + (c/2) x^2 (slope zero at
/// the origin, convex, bounded below by s0).
struct AlphaFamily {
  double floor = 0.1;  // populated with delta_star by ModelParams
  double c = 1.0;

  double value(double x) const { return floor + 0.5 * c * x * x; }
  double d1(double x) const { return c * x; }
  double d2(double /*x*/) const { return c; }
  double sup_on(double R) const { return floor + 0.5 * c * R * R; }
  double d1_sup_on(double R) const { return c * R; }
};

/// Relaxation-time weight s0 + c x^2, locally Lipschitz, >= s0.
struct Alpha0Family {
  double floor = 0.1;
  double c = 1.0;

  double value(double x) const { return floor + c * x * x; }
  double d1(double x) const { return 2.0 * c * x; }
  double sup_on(double R) const { return floor + c * R * R; }
  double d1_sup_on(double R) const { return 2.0 * c * R; }
};

/// Model coefficients and constants: kappa, M0, nu0, delta_star plus the
/// coefficient families. The family floors are kept equal to delta_star.
struct ModelParams {
  double kappa = 1.0;
  double M0 = 1.0;
  double nu0 = 0.0;
  double delta_star = 0.1;
  GFamily g_family;
  AlphaFamily alpha_family;
  Alpha0Family alpha0_family;

  ModelParams() { sync_floors(); }
  void sync_floors() {
    alpha_family.floor = delta_star;
    alpha0_family.floor = delta_star;
  }

  double alpha(double x) const { return alpha_family.value(x); }
  double dalpha(double x) const { return alpha_family.d1(x); }
  double ddalpha(double x) const { return alpha_family.d2(x); }
  double alpha0(double x) const { return alpha0_family.value(x); }
  double dalpha0(double x) const { return alpha0_family.d1(x); }
  double g(double x) const { return g_family.g(x); }
  double G(double x) const { return g_family.G(x); }
  double dg(double x) const { return g_family.dg(x); }
  double dg_sup() const { return g_family.dg_sup(); }

  /// Structural checks behind (A1), (A3), (A4): positivity of the fixed
  /// constants, alpha'(0)=0 and alpha'' >= 0, floors >= delta_star, G >= 0
  /// with G' = g, all sampled on a sweep over [-range, range]. Returns the
  /// violated assumption tags, empty when admissible.
  std::vector<std::string> structural_violations(double range = 10.0,
                                                 int samples = 10000) const;
};

/// Sup-norm of |f| over [-R, R] by dense sampling (used to cross-check the
/// analytic family bounds and to admit future families without closed
/// forms).
template <class F>
double sampled_sup(F&& f, double R, int samples = 10000) {
  double m = 0.0;
  for (int k = 0; k <= samples; ++k) {
    const double x = -R + 2.0 * R * k / samples;
    const double v = f(x);
    if (v > m || -v > m) m = v > 0 ? v : -v;
  }
  return m;
}

}  // namespace kwc

#endif
