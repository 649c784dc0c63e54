#include "mpdec/mesh.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

#include "mpdec/quadrature.hpp"

namespace mpdec {

std::size_t Grid::index(int i, int j) const {
  return static_cast<std::size_t>(wrap_index(j, ny)) * static_cast<std::size_t>(nx) +
         static_cast<std::size_t>(wrap_index(i, nx));
}

Grid build_grid(const Bounds& bounds, int nx, int ny) {
  if (nx < 1 || ny < 1) {
    throw std::invalid_argument("build_grid: cell counts must be positive (got " + std::to_string(nx) + "x" +
                                std::to_string(ny) + ")");
  }
  if (!(bounds.x_max > bounds.x_min) || !(bounds.y_max > bounds.y_min)) {
    throw std::invalid_argument("build_grid: domain bounds are inverted or empty");
  }
  Grid g;
  g.bounds = bounds;
  g.nx = nx;
  g.ny = ny;
  g.dx = (bounds.x_max - bounds.x_min) / nx;
  g.dy = (bounds.y_max - bounds.y_min) / ny;
  return g;
}

CellIndex cell_index(const Grid& grid, std::size_t alpha) {
  return {grid.column(alpha), grid.row(alpha), alpha};
}

StateField init_cell_averages(const Grid& grid, const PointStateFn& fn, int points) {
  const QuadratureRule rule = gauss_legendre(points);
  StateField field(grid.cell_count());
  for (int j = 0; j < grid.ny; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      ConservedState avg;
      for (std::size_t a = 0; a < rule.size(); ++a) {
        const double x = grid.x_center(i) + grid.dx * rule.nodes[a];
        for (std::size_t b = 0; b < rule.size(); ++b) {
          const double y = grid.y_center(j) + grid.dy * rule.nodes[b];
          const double w = rule.weights[a] * rule.weights[b];
          const ConservedState u = fn(x, y);
          avg.h += w * u.h;
          avg.hu += w * u.hu;
          avg.hv += w * u.hv;
        }
      }
      field.set(grid.index(i, j), avg);
    }
  }
  return field;
}

std::vector<double> init_cell_averages(const Grid& grid, const PointScalarFn& fn, int points) {
  const QuadratureRule rule = gauss_legendre(points);
  std::vector<double> avg(grid.cell_count(), 0.0);
  for (int j = 0; j < grid.ny; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      double acc = 0.0;
      for (std::size_t a = 0; a < rule.size(); ++a) {
        const double x = grid.x_center(i) + grid.dx * rule.nodes[a];
        for (std::size_t b = 0; b < rule.size(); ++b) {
          const double y = grid.y_center(j) + grid.dy * rule.nodes[b];
          acc += rule.weights[a] * rule.weights[b] * fn(x, y);
        }
      }
      avg[grid.index(i, j)] = acc;
    }
  }
  return avg;
}

double total_volume(const Grid& grid, const StateField& field) {
  return std::accumulate(field.h.begin(), field.h.end(), 0.0) * grid.cell_area();
}

}  // namespace mpdec
