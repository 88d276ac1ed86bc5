#include "deadcore/grid.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace deadcore {

void validate_grid(const GridSpec& grid) {
  if (grid.dim != 1 && grid.dim != 2) throw std::invalid_argument("grid dimension must be 1 or 2");
  for (int axis = 0; axis < grid.dim; ++axis) {
    if (grid.cells[axis] < 4) throw std::invalid_argument("each axis needs at least 4 cells");
    if (!(grid.lengths[axis] > 0.0)) throw std::invalid_argument("axis lengths must be positive");
  }
  if (grid.dim == 2) {
    const double hx = grid.spacing(0);
    const double hy = grid.spacing(1);
    if (std::max(hx, hy) > 4.0 * std::min(hx, hy)) {
      throw std::invalid_argument("grid spacings differ by more than a factor 4");
    }
  }
}

Field::Field(const GridSpec& grid, double value) : grid_(grid) {
  const std::size_t rows = grid.dim == 2 ? static_cast<std::size_t>(grid.ny() + 2) : 1;
  data_.assign(rows * static_cast<std::size_t>(grid.nx() + 2), value);
}

std::vector<double> Field::interior() const {
  std::vector<double> out;
  out.reserve(grid_.cell_count());
  for_each_cell([&](int i, int j) { out.push_back((*this)(i, j)); });
  return out;
}

void Field::set_interior(const std::vector<double>& values) {
  if (values.size() != grid_.cell_count()) throw std::invalid_argument("interior size mismatch");
  std::size_t k = 0;
  for_each_cell([&](int i, int j) { (*this)(i, j) = values[k++]; });
}

double Field::min() const {
  double m = std::numeric_limits<double>::infinity();
  for_each_cell([&](int i, int j) { m = std::min(m, (*this)(i, j)); });
  return m;
}

double Field::max() const {
  double m = -std::numeric_limits<double>::infinity();
  for_each_cell([&](int i, int j) { m = std::max(m, (*this)(i, j)); });
  return m;
}

Field sample(const GridSpec& grid, const std::function<double(double, double)>& f) {
  Field out(grid);
  out.for_each_cell([&](int i, int j) {
    const double y = grid.dim == 2 ? grid.center(1, j) : 0.0;
    out(i, j) = f(grid.center(0, i), y);
  });
  apply_neumann_ghosts_in_place(out);
  return out;
}

void apply_neumann_ghosts_in_place(Field& field) {
  const GridSpec& g = field.grid();
  const int nx = g.nx();
  const int ny = g.ny();
  for (int j = 0; j < ny; ++j) {
    field(-1, j) = field(0, j);
    field(nx, j) = field(nx - 1, j);
  }
  if (g.dim == 2) {
    // Including the x-ghost columns fills the corners as well.
    for (int i = -1; i <= nx; ++i) {
      field(i, -1) = field(i, 0);
      field(i, ny) = field(i, ny - 1);
    }
  }
}

Field apply_neumann_ghosts(Field field) {
  apply_neumann_ghosts_in_place(field);
  return field;
}

Field laplacian(const Field& f) {
  const GridSpec& g = f.grid();
  Field out(g);
  const double ihx2 = 1.0 / (g.spacing(0) * g.spacing(0));
  if (g.dim == 1) {
    f.for_each_cell([&](int i, int) { out(i) = (f(i - 1) - 2.0 * f(i) + f(i + 1)) * ihx2; });
  } else {
    const double ihy2 = 1.0 / (g.spacing(1) * g.spacing(1));
    f.for_each_cell([&](int i, int j) {
      out(i, j) = (f(i - 1, j) - 2.0 * f(i, j) + f(i + 1, j)) * ihx2 +
                  (f(i, j - 1) - 2.0 * f(i, j) + f(i, j + 1)) * ihy2;
    });
  }
  apply_neumann_ghosts_in_place(out);
  return out;
}

std::vector<double> grad_component(const Field& f, int axis) {
  const GridSpec& g = f.grid();
  if (axis < 0 || axis >= g.dim) throw std::invalid_argument("gradient axis out of range");
  const int nx = g.nx();
  const int ny = g.ny();
  const double ih = 1.0 / g.spacing(axis);
  std::vector<double> faces;
  if (axis == 0) {
    faces.reserve(static_cast<std::size_t>((nx + 1) * ny));
    for (int j = 0; j < ny; ++j) {
      for (int i = -1; i < nx; ++i) {
        const bool boundary = i == -1 || i == nx - 1;
        faces.push_back(boundary ? 0.0 : (f(i + 1, j) - f(i, j)) * ih);
      }
    }
  } else {
    faces.reserve(static_cast<std::size_t>(nx * (ny + 1)));
    for (int j = -1; j < ny; ++j) {
      for (int i = 0; i < nx; ++i) {
        const bool boundary = j == -1 || j == ny - 1;
        faces.push_back(boundary ? 0.0 : (f(i, j + 1) - f(i, j)) * ih);
      }
    }
  }
  return faces;
}

double integrate(const Field& f) {
  double sum = 0.0;
  f.for_each_cell([&](int i, int j) { sum += f(i, j); });
  return sum * f.grid().cell_volume();
}

double inner_product(const Field& a, const Field& b) {
  double sum = 0.0;
  a.for_each_cell([&](int i, int j) { sum += a(i, j) * b(i, j); });
  return sum * a.grid().cell_volume();
}

}  // namespace deadcore
