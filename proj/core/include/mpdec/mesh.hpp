#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace mpdec {

/// Conserved shallow-water variables at a point or as a cell average.
struct ConservedState {
  double h = 0.0;
  double hu = 0.0;
  double hv = 0.0;

  friend bool operator==(const ConservedState&, const ConservedState&) = default;
};

struct Bounds {
  double x_min = 0.0;
  double x_max = 1.0;
  double y_min = 0.0;
  double y_max = 1.0;
};

/// Uniform Cartesian grid with periodic wrap in both directions.
struct Grid {
  Bounds bounds;
  int nx = 0;
  int ny = 0;
  double dx = 0.0;
  double dy = 0.0;

  std::size_t cell_count() const { return static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny); }
  double cell_area() const { return dx * dy; }

  double x_center(int i) const { return bounds.x_min + (i + 0.5) * dx; }
  double y_center(int j) const { return bounds.y_min + (j + 0.5) * dy; }

  /// Flat index alpha = j * nx + i. Coordinates are wrapped periodically.
  std::size_t index(int i, int j) const;
  int column(std::size_t alpha) const { return static_cast<int>(alpha % static_cast<std::size_t>(nx)); }
  int row(std::size_t alpha) const { return static_cast<int>(alpha / static_cast<std::size_t>(nx)); }
};

struct CellIndex {
  int i = 0;
  int j = 0;
  std::size_t alpha = 0;
};

/// Throws std::invalid_argument on inverted bounds or non-positive counts.
Grid build_grid(const Bounds& bounds, int nx, int ny);

CellIndex cell_index(const Grid& grid, std::size_t alpha);

/// Periodic wrap into [0, n).
constexpr int wrap_index(int i, int n) {
  const int m = i % n;
  return m < 0 ? m + n : m;
}

/// Cell averages stored as three flat arrays, one per conserved variable.
struct StateField {
  std::vector<double> h;
  std::vector<double> hu;
  std::vector<double> hv;

  StateField() = default;
  explicit StateField(std::size_t n) : h(n, 0.0), hu(n, 0.0), hv(n, 0.0) {}

  std::size_t size() const { return h.size(); }

  std::vector<double>& component(int c) { return c == 0 ? h : (c == 1 ? hu : hv); }
  const std::vector<double>& component(int c) const { return c == 0 ? h : (c == 1 ? hu : hv); }

  ConservedState at(std::size_t alpha) const { return {h[alpha], hu[alpha], hv[alpha]}; }
  void set(std::size_t alpha, const ConservedState& u) {
    h[alpha] = u.h;
    hu[alpha] = u.hu;
    hv[alpha] = u.hv;
  }
};

using PointStateFn = std::function<ConservedState(double x, double y)>;
using PointScalarFn = std::function<double(double x, double y)>;

/// Cell averages by tensor-product Gauss-Legendre quadrature with `points` nodes per direction.
StateField init_cell_averages(const Grid& grid, const PointStateFn& fn, int points);
std::vector<double> init_cell_averages(const Grid& grid, const PointScalarFn& fn, int points);

/// Sum of h * dx * dy over all cells.
double total_volume(const Grid& grid, const StateField& field);

}  // namespace mpdec
