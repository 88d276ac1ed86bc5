#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <functional>
#include <vector>

namespace deadcore {

/// Uniform cell-centred box mesh in one or two dimensions.
struct GridSpec {
  int dim = 1;
  std::array<double, 2> lengths{1.0, 1.0};
  std::array<int, 2> cells{64, 1};

  bool operator==(const GridSpec&) const = default;

  int nx() const { return cells[0]; }
  int ny() const { return dim == 2 ? cells[1] : 1; }
  std::size_t cell_count() const { return static_cast<std::size_t>(nx()) * static_cast<std::size_t>(ny()); }
  double spacing(int axis) const { return lengths[axis] / cells[axis]; }
  double min_spacing() const { return dim == 2 ? std::min(spacing(0), spacing(1)) : spacing(0); }
  double cell_volume() const { return dim == 2 ? spacing(0) * spacing(1) : spacing(0); }
  double center(int axis, int index) const { return (index + 0.5) * spacing(axis); }
};

/// Throws std::invalid_argument unless dim is 1 or 2, each active axis has
/// at least 4 cells and positive length, and 2-D spacings are within a
/// factor 4 of each other.
void validate_grid(const GridSpec& grid);

/// Scalar cell field with one ghost layer along every active axis.
/// Interior indices run over [0, nx) x [0, ny); ghosts sit at -1 and n.
class Field {
 public:
  Field() = default;
  explicit Field(const GridSpec& grid, double value = 0.0);

  const GridSpec& grid() const { return grid_; }

  double& operator()(int i, int j = 0) { return data_[index(i, j)]; }
  double operator()(int i, int j = 0) const { return data_[index(i, j)]; }

  /// Interior values in row-major order (x fastest).
  std::vector<double> interior() const;
  void set_interior(const std::vector<double>& values);

  /// Visits every interior cell as f(i, j).
  template <class F>
  void for_each_cell(F&& f) const {
    for (int j = 0; j < grid_.ny(); ++j)
      for (int i = 0; i < grid_.nx(); ++i) f(i, j);
  }

  double min() const;
  double max() const;

  bool operator==(const Field& o) const { return grid_ == o.grid_ && data_ == o.data_; }

 private:
  std::size_t index(int i, int j) const {
    const int gy = grid_.dim == 2 ? 1 : 0;
    return static_cast<std::size_t>(j + gy) * static_cast<std::size_t>(grid_.nx() + 2) +
           static_cast<std::size_t>(i + 1);
  }

  GridSpec grid_;
  std::vector<double> data_;
};

/// Samples a function of the cell centre (x, y) into a field (y = 0 in 1-D).
Field sample(const GridSpec& grid, const std::function<double(double, double)>& f);

/// Reflective ghosts: each ghost copies its adjacent interior cell, so the
/// normal difference across every boundary face vanishes.
Field apply_neumann_ghosts(Field field);
void apply_neumann_ghosts_in_place(Field& field);

/// Centred 3-point (1-D) / 5-point (2-D) Laplacian. Expects ghosts applied;
/// the result carries reflected ghosts too.
Field laplacian(const Field& field);

/// Face differences (f_{i+1} - f_i)/h along `axis`. Layout: for axis 0,
/// (nx + 1) faces per row, rows stacked; for axis 1, ny + 1 faces per column,
/// stored row-major as face(j) * nx + i. Boundary faces are 0.
std::vector<double> grad_component(const Field& field, int axis);

/// Sum of interior values times the cell volume.
double integrate(const Field& field);

/// Discrete inner product sum a_i b_i |cell|.
double inner_product(const Field& a, const Field& b);

}  // namespace deadcore
