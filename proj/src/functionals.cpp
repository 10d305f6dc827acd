#include "kwc/functionals.hpp"

#include <cmath>
#include <stdexcept>

namespace kwc {

double gamma_eps(const double* y, int dim, double eps) {
  double s = eps * eps;
  for (int a = 0; a < dim; ++a) s += y[a] * y[a];
  return std::sqrt(s);
}

double gamma_eps(const std::array<double, 2>& y, double eps) {
  return gamma_eps(y.data(), 2, eps);
}

std::array<double, 2> grad_gamma_eps(const std::array<double, 2>& y, int dim,
                                     double eps) {
  if (!(eps > 0.0))
    throw std::invalid_argument("grad_gamma_eps: eps must be positive");
  const double den = gamma_eps(y.data(), dim, eps);
  std::array<double, 2> out = {0.0, 0.0};
  for (int a = 0; a < dim; ++a) out[a] = y[a] / den;
  return out;
}

double phi_nu_eps(const ScalarField& eta, const ScalarField& theta, double nu,
                  double eps, const ModelParams& p) {
  if (eta.grid() != theta.grid())
    throw std::invalid_argument("phi_nu_eps: grid mismatch");
  const Grid& g = eta.grid();
  const VectorField grad = gradient(theta);
  const double vol = g.cell_volume();
  double tv_term = 0.0, grad_sq = 0.0, mass = 0.0;
  for (int c = 0; c < eta.size(); ++c) {
    const double gn = grad.cell_norm(c);
    tv_term += p.alpha(eta[c]) * std::sqrt(eps * eps + gn * gn);
    grad_sq += gn * gn;
    mass += theta[c] * theta[c];
  }
  return (tv_term + 0.5 * nu * nu * grad_sq + 0.5 * p.M0 * mass) * vol;
}

double phi_nu(const ScalarField& eta, const ScalarField& theta, double nu,
              const ModelParams& p) {
  if (eta.grid() != theta.grid())
    throw std::invalid_argument("phi_nu: grid mismatch");
  ScalarField weight(eta.grid());
  for (int c = 0; c < eta.size(); ++c) weight[c] = p.alpha(eta[c]);
  const double tv = signed_weighted_tv(weight, theta);  // weight >= delta_star
  const VectorField grad = gradient(theta);
  const double grad_sq = inner_product(grad, grad);
  const double mass = inner_product(theta, theta);
  return tv + 0.5 * nu * nu * grad_sq + 0.5 * p.M0 * mass;
}

double free_energy(const ScalarField& eta, const ScalarField& theta, double nu,
                   double eps, const ModelParams& p) {
  const VectorField grad_eta = gradient(eta);
  const double vol = eta.grid().cell_volume();
  double g_pot = 0.0;
  for (int c = 0; c < eta.size(); ++c) g_pot += p.G(eta[c]);
  return 0.5 * p.kappa * p.kappa * inner_product(grad_eta, grad_eta) +
         g_pot * vol + phi_nu_eps(eta, theta, nu, eps, p);
}

}  // namespace kwc
