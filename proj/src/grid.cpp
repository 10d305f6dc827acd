#include "kwc/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace kwc {

Grid Grid::line(int nx, double length) {
  Grid g;
  g.dim = 1;
  g.cells = {nx, 1};
  g.spacing = {length / nx, 1.0};
  g.validate();
  return g;
}

Grid Grid::box(int nx, int ny, double length_x, double length_y) {
  Grid g;
  g.dim = 2;
  g.cells = {nx, ny};
  g.spacing = {length_x / nx, length_y / ny};
  g.validate();
  return g;
}

Grid Grid::single_cell(double volume) {
  Grid g;
  g.dim = 1;
  g.cells = {1, 1};
  g.spacing = {volume, 1.0};
  g.validate();
  return g;
}

void Grid::validate() const {
  if (dim != 1 && dim != 2)
    throw std::invalid_argument("Grid: dim must be 1 or 2");
  if (cells[0] < 1 || (dim == 2 && cells[1] < 1))
    throw std::invalid_argument("Grid: cells_per_axis must be >= 1");
  if (dim == 1 && cells[1] != 1)
    throw std::invalid_argument("Grid: 1D grids must have cells[1] == 1");
  for (int a = 0; a < dim; ++a)
    if (!(spacing[a] > 0.0) || !std::isfinite(spacing[a]))
      throw std::invalid_argument("Grid: spacing must be positive and finite");
}

void ScalarField::fill(double c) {
  for (auto& x : v_) x = c;
}

double ScalarField::linf() const {
  double m = 0.0;
  for (double x : v_) m = std::max(m, std::abs(x));
  return m;
}

bool ScalarField::all_finite() const {
  for (double x : v_)
    if (!std::isfinite(x)) return false;
  return true;
}

double VectorField::cell_norm(int cell) const {
  const int n = grid_.cell_count();
  double s = 0.0;
  for (int a = 0; a < grid_.dim; ++a) {
    const double c = v_[static_cast<std::size_t>(a) * n + cell];
    s += c * c;
  }
  return std::sqrt(s);
}

}  // namespace kwc
