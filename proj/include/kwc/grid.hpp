#ifndef KWC_GRID_HPP
#define KWC_GRID_HPP

#include <array>
#include <cstddef>
#include <vector>

namespace kwc {

/// Uniform structured grid over a 1D interval or a 2D box, with
/// cell-centered values and homogeneous Neumann boundaries handled by the
/// operators in operators.hpp. Axis 0 is x (fastest index), axis 1 is y.
struct Grid {
  int dim = 1;
  std::array<int, 2> cells = {1, 1};        // cells[1] == 1 in 1D
  std::array<double, 2> spacing = {1.0, 1.0};

  static Grid line(int nx, double length);
  static Grid box(int nx, int ny, double length_x, double length_y);
  /// Degenerate one-cell grid; used as an exact scalar oracle by the tests.
  static Grid single_cell(double volume = 1.0);

  int cell_count() const { return cells[0] * cells[1]; }
  double cell_volume() const {
    return dim == 1 ? spacing[0] : spacing[0] * spacing[1];
  }
  /// Lebesgue measure of the domain, exactly (cells * spacing) per axis.
  double measure() const {
    double m = cells[0] * spacing[0];
    if (dim == 2) m *= cells[1] * spacing[1];
    return m;
  }

  int index(int i, int j = 0) const { return j * cells[0] + i; }
  bool has_neighbor(int i, int j, int axis) const {
    return axis == 0 ? i + 1 < cells[0] : j + 1 < cells[1];
  }
  int neighbor(int idx, int axis) const {
    return axis == 0 ? idx + 1 : idx + cells[0];
  }

  bool operator==(const Grid& o) const {
    return dim == o.dim && cells == o.cells && spacing == o.spacing;
  }
  bool operator!=(const Grid& o) const { return !(*this == o); }

  void validate() const;  // throws std::invalid_argument on bad extents
};

/// One real value per cell. Carries its grid by value; fields on distinct
/// grids never mix (operators throw on mismatch).
class ScalarField {
 public:
  ScalarField() = default;
  explicit ScalarField(const Grid& g, double fill = 0.0)
      : grid_(g), v_(static_cast<std::size_t>(g.cell_count()), fill) {}

  const Grid& grid() const { return grid_; }
  int size() const { return static_cast<int>(v_.size()); }
  double& operator[](int i) { return v_[static_cast<std::size_t>(i)]; }
  double operator[](int i) const { return v_[static_cast<std::size_t>(i)]; }
  std::vector<double>& values() { return v_; }
  const std::vector<double>& values() const { return v_; }

  void fill(double c);
  double linf() const;
  bool all_finite() const;

 private:
  Grid grid_;
  std::vector<double> v_;
};

/// dim real components per cell, stored axis-major: component a of cell c
/// lives at a*cell_count + c.
class VectorField {
 public:
  VectorField() = default;
  explicit VectorField(const Grid& g)
      : grid_(g),
        v_(static_cast<std::size_t>(g.dim) * g.cell_count(), 0.0) {}

  const Grid& grid() const { return grid_; }
  int cell_count() const { return grid_.cell_count(); }
  double& at(int cell, int axis) {
    return v_[static_cast<std::size_t>(axis) * grid_.cell_count() + cell];
  }
  double at(int cell, int axis) const {
    return v_[static_cast<std::size_t>(axis) * grid_.cell_count() + cell];
  }
  std::vector<double>& values() { return v_; }
  const std::vector<double>& values() const { return v_; }

  /// Euclidean norm of the per-cell component vector.
  double cell_norm(int cell) const;

 private:
  Grid grid_;
  std::vector<double> v_;
};

}  // namespace kwc

#endif
