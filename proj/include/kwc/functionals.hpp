#ifndef KWC_FUNCTIONALS_HPP
#define KWC_FUNCTIONALS_HPP

#include <array>

#include "kwc/coefficients.hpp"
#include "kwc/grid.hpp"
#include "kwc/operators.hpp"

namespace kwc {

/// gamma_eps(y) = sqrt(eps^2 + |y|^2); smooth strictly convex
/// regularization of the Euclidean norm, equal to |y| at eps = 0.
double gamma_eps(const double* y, int dim, double eps);
inline double gamma_eps_1(double y, double eps) { return gamma_eps(&y, 1, eps); }
double gamma_eps(const std::array<double, 2>& y, double eps);

/// grad gamma_eps(y) = y / sqrt(eps^2 + |y|^2); |result| < 1. The eps = 0
/// case is set-valued and rejected here.
std::array<double, 2> grad_gamma_eps(const std::array<double, 2>& y, int dim,
                                     double eps);

/// Phi_{nu,eps}(eta, theta) =
///   sum alpha(eta) gamma_eps(grad theta) vol
///   + (nu^2/2) sum |grad theta|^2 vol + (M0/2) sum theta^2 vol.
double phi_nu_eps(const ScalarField& eta, const ScalarField& theta, double nu,
                  double eps, const ModelParams& p);

/// Sharp-interface counterpart: weighted TV with weight alpha(eta) plus the
/// same quadratic terms; the eps -> 0 limit of phi_nu_eps on a fixed grid.
double phi_nu(const ScalarField& eta, const ScalarField& theta, double nu,
              const ModelParams& p);

/// F_{nu,eps}(eta, theta) = (kappa^2/2) sum |grad eta|^2 vol
///   + sum G(eta) vol + Phi_{nu,eps}(eta, theta).
double free_energy(const ScalarField& eta, const ScalarField& theta, double nu,
                   double eps, const ModelParams& p);

}  // namespace kwc

#endif
