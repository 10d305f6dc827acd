#include "kwc/operators.hpp"

#include <cmath>
#include <stdexcept>

namespace kwc {

namespace {

void require_same_grid(const Grid& a, const Grid& b, const char* what) {
  if (a != b) throw std::invalid_argument(std::string(what) + ": grid mismatch");
}

}  // namespace

VectorField gradient(const ScalarField& f) {
  const Grid& g = f.grid();
  VectorField out(g);
  const int nx = g.cells[0];
  const int ny = g.cells[1];
  for (int a = 0; a < g.dim; ++a) {
    const double inv_h = 1.0 / g.spacing[a];
    for (int j = 0; j < ny; ++j) {
      for (int i = 0; i < nx; ++i) {
        const int c = g.index(i, j);
        if (g.has_neighbor(i, j, a))
          out.at(c, a) = (f[g.neighbor(c, a)] - f[c]) * inv_h;
        // else: mirrored ghost value, component stays exactly 0
      }
    }
  }
  return out;
}

ScalarField divergence(const VectorField& w) {
  const Grid& g = w.grid();
  ScalarField out(g, 0.0);
  const int nx = g.cells[0];
  const int ny = g.cells[1];
  for (int a = 0; a < g.dim; ++a) {
    const double inv_h = 1.0 / g.spacing[a];
    for (int j = 0; j < ny; ++j) {
      for (int i = 0; i < nx; ++i) {
        const int c = g.index(i, j);
        // Component at the last cell of an axis is a face beyond the
        // boundary; zero-flux there makes div the exact negative adjoint
        // of gradient.
        const double here = g.has_neighbor(i, j, a) ? w.at(c, a) : 0.0;
        const bool low = (a == 0 ? i == 0 : j == 0);
        const double below = low ? 0.0 : w.at(a == 0 ? c - 1 : c - nx, a);
        out[c] += (here - below) * inv_h;
      }
    }
  }
  return out;
}

double inner_product(const ScalarField& f, const ScalarField& g) {
  require_same_grid(f.grid(), g.grid(), "inner_product");
  const double vol = f.grid().cell_volume();
  double s = 0.0;
  for (int c = 0; c < f.size(); ++c) s += f[c] * g[c];
  return s * vol;
}

double inner_product(const VectorField& w, const VectorField& z) {
  require_same_grid(w.grid(), z.grid(), "inner_product");
  const double vol = w.grid().cell_volume();
  double s = 0.0;
  const auto& a = w.values();
  const auto& b = z.values();
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s * vol;
}

double norm_X(const ScalarField& f) { return std::sqrt(inner_product(f, f)); }
double norm_X(const VectorField& w) { return std::sqrt(inner_product(w, w)); }

double total_variation(const ScalarField& theta) {
  const VectorField grad = gradient(theta);
  const double vol = theta.grid().cell_volume();
  double s = 0.0;
  for (int c = 0; c < theta.size(); ++c) s += grad.cell_norm(c);
  return s * vol;
}

double weighted_tv(const ScalarField& beta, const ScalarField& theta) {
  require_same_grid(beta.grid(), theta.grid(), "weighted_tv");
  for (int c = 0; c < beta.size(); ++c)
    if (beta[c] < 0.0)
      throw std::invalid_argument("weighted_tv: weight must be nonnegative");
  const VectorField grad = gradient(theta);
  const double vol = theta.grid().cell_volume();
  double s = 0.0;
  for (int c = 0; c < theta.size(); ++c) s += beta[c] * grad.cell_norm(c);
  return s * vol;
}

double signed_weighted_tv(const ScalarField& beta, const ScalarField& theta) {
  require_same_grid(beta.grid(), theta.grid(), "signed_weighted_tv");
  const VectorField grad = gradient(theta);
  const double vol = theta.grid().cell_volume();
  double pos = 0.0, neg = 0.0;
  for (int c = 0; c < theta.size(); ++c) {
    const double t = grad.cell_norm(c);
    if (beta[c] >= 0.0)
      pos += beta[c] * t;
    else
      neg += -beta[c] * t;
  }
  return (pos - neg) * vol;
}

}  // namespace kwc
