#ifndef KWC_OPERATORS_HPP
#define KWC_OPERATORS_HPP

#include "kwc/grid.hpp"

namespace kwc {

/// Forward-difference gradient with mirrored ghost cells: the component
/// along an axis vanishes at the last cell of that axis, so the discrete
/// normal derivative on the boundary is exactly zero.
VectorField gradient(const ScalarField& f);

/// Negative adjoint of gradient with respect to the discrete inner
/// products below; discrete integration by parts holds to machine
/// precision: inner(divergence(w), f) == -inner(w, gradient(f)).
ScalarField divergence(const VectorField& w);

/// Cell-volume-weighted l2 inner products (discretize (.,.)_X).
double inner_product(const ScalarField& f, const ScalarField& g);
double inner_product(const VectorField& w, const VectorField& z);

double norm_X(const ScalarField& f);   // sqrt(inner_product(f, f))
double norm_X(const VectorField& w);

/// Sum over cells of |grad theta| * cell volume (isotropic Euclidean norm
/// of the per-cell gradient).
double total_variation(const ScalarField& theta);

/// Weighted total variation; beta must be nonnegative everywhere.
double weighted_tv(const ScalarField& beta, const ScalarField& theta);

/// Signed weight: weighted_tv([beta]+, theta) - weighted_tv([beta]-, theta).
double signed_weighted_tv(const ScalarField& beta, const ScalarField& theta);

}  // namespace kwc

#endif
