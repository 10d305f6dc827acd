#include "kwc/coefficients.hpp"

#include <cmath>
#include <stdexcept>

namespace kwc {

double GFamily::g(double x) const {
  return kind == Kind::linear ? x : x + a * std::sin(b * x);
}

double GFamily::G(double x) const {
  return kind == Kind::linear ? 0.5 * x * x
                              : 0.5 * x * x + (a / b) * (1.0 - std::cos(b * x));
}

double GFamily::dg(double x) const {
  return kind == Kind::linear ? 1.0 : 1.0 + a * b * std::cos(b * x);
}

double GFamily::dg_sup() const {
  return kind == Kind::linear ? 1.0 : 1.0 + a * b;
}

std::string GFamily::name() const {
  return kind == Kind::linear ? "linear" : "double_well";
}

GFamily GFamily::parse(const std::string& name, double a, double b) {
  GFamily f;
  if (name == "linear") {
    f.kind = Kind::linear;
  } else if (name == "double_well") {
    f.kind = Kind::double_well;
    if (!(a > 0.0) || !(b > 0.0))
      throw std::invalid_argument("g family double_well needs a > 0, b > 0");
    f.a = a;
    f.b = b;
  } else {
    throw std::invalid_argument("unknown g family: " + name);
  }
  return f;
}

std::vector<std::string> ModelParams::structural_violations(double range,
                                                            int samples) const {
  std::vector<std::string> bad;
  if (!(kappa > 0.0) || !(M0 > 0.0) || !(nu0 >= 0.0)) bad.push_back("(A1)");
  bool a3 = delta_star > 0.0 && delta_star < 1.0 && dalpha(0.0) == 0.0;
  bool a4 = true;
  const double h = 1e-5;
  for (int k = 0; k <= samples && (a3 || a4); ++k) {
    const double x = -range + 2.0 * range * k / samples;
    if (ddalpha(x) < 0.0 || alpha(x) < delta_star || alpha0(x) < delta_star)
      a3 = false;
    if (G(x) < 0.0) a4 = false;
    // G' = g via a centered difference at the sample point
    const double fd = (G(x + h) - G(x - h)) / (2.0 * h);
    if (std::abs(fd - g(x)) > 1e-6 * (1.0 + std::abs(g(x)))) a4 = false;
  }
  // coercivity: g must reach +-(1 + |g|-scale) far out
  if (!(g(1e6) > 0.0) || !(g(-1e6) < 0.0)) a4 = false;
  if (!a3) bad.push_back("(A3)");
  if (!a4) bad.push_back("(A4)");
  return bad;
}

}  // namespace kwc
