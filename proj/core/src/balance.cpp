#include "mpdec/balance.hpp"

#include <iomanip>
#include <ostream>
#include <stdexcept>

namespace mpdec {
namespace {

double positive_part(double x) { return x > 0.0 ? x : 0.0; }
double negative_magnitude(double x) { return x < 0.0 ? -x : 0.0; }

}  // namespace

FluxResidual::FluxResidual(std::size_t cells) {
  for (int c = 0; c < 3; ++c) {
    x_face[c].assign(cells, 0.0);
    y_face[c].assign(cells, 0.0);
    source[c].assign(cells, 0.0);
  }
}

void subtract_reference(FluxResidual& current, const ReferenceResidual& reference) {
  if (reference.size() != current.size()) throw std::invalid_argument("subtract_reference: size mismatch");
  for (int c = 0; c < 3; ++c) {
    for (std::size_t k = 0; k < current.size(); ++k) {
      current.x_face[c][k] -= reference.x_face[c][k];
      current.y_face[c][k] -= reference.y_face[c][k];
      current.source[c][k] -= reference.source[c][k];
    }
  }
}

FluxResidual wb_fluxes(const FluxResidual& current, const ReferenceResidual* reference) {
  FluxResidual out = current;
  if (reference != nullptr) subtract_reference(out, *reference);
  return out;
}

PdsSystem::PdsSystem(std::size_t n_rows, int n_width)
    : rows(n_rows),
      width(n_width),
      cols(n_rows * n_width, 0),
      production(n_rows * n_width, 0.0),
      destruction(n_rows * n_width, 0.0),
      momentum_x(n_rows, 0.0),
      momentum_y(n_rows, 0.0) {}

PdsSystem PdsSystem::for_grid(const Grid& grid) {
  PdsSystem pds(grid.cell_count(), 4);
  for (int j = 0; j < grid.ny; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      const std::size_t alpha = grid.index(i, j);
      pds.cols[pds.slot(alpha, kWest)] = grid.index(i - 1, j);
      pds.cols[pds.slot(alpha, kEast)] = grid.index(i + 1, j);
      pds.cols[pds.slot(alpha, kSouth)] = grid.index(i, j - 1);
      pds.cols[pds.slot(alpha, kNorth)] = grid.index(i, j + 1);
    }
  }
  return pds;
}

double PdsSystem::net(std::size_t row) const {
  double acc = 0.0;
  for (int s = 0; s < width; ++s) acc += production[slot(row, s)] - destruction[slot(row, s)];
  return acc;
}

void assemble_pds(const FluxResidual& modified, const Grid& grid, PdsSystem& out) {
  if (out.rows != grid.cell_count() || out.width != 4) out = PdsSystem::for_grid(grid);
  const double inv_dx = 1.0 / grid.dx;
  const double inv_dy = 1.0 / grid.dy;
  for (int j = 0; j < grid.ny; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      const std::size_t alpha = grid.index(i, j);
      const std::size_t west = grid.index(i - 1, j);
      const std::size_t south = grid.index(i, j - 1);

      const double fw = modified.x_face[0][west];
      const double fe = modified.x_face[0][alpha];
      const double gs = modified.y_face[0][south];
      const double gn = modified.y_face[0][alpha];

      out.production[out.slot(alpha, PdsSystem::kWest)] = positive_part(fw) * inv_dx;
      out.destruction[out.slot(alpha, PdsSystem::kWest)] = negative_magnitude(fw) * inv_dx;
      out.production[out.slot(alpha, PdsSystem::kEast)] = negative_magnitude(fe) * inv_dx;
      out.destruction[out.slot(alpha, PdsSystem::kEast)] = positive_part(fe) * inv_dx;
      out.production[out.slot(alpha, PdsSystem::kSouth)] = positive_part(gs) * inv_dy;
      out.destruction[out.slot(alpha, PdsSystem::kSouth)] = negative_magnitude(gs) * inv_dy;
      out.production[out.slot(alpha, PdsSystem::kNorth)] = negative_magnitude(gn) * inv_dy;
      out.destruction[out.slot(alpha, PdsSystem::kNorth)] = positive_part(gn) * inv_dy;

      out.momentum_x[alpha] = -(modified.x_face[1][alpha] - modified.x_face[1][west]) * inv_dx -
                              (modified.y_face[1][alpha] - modified.y_face[1][south]) * inv_dy +
                              modified.source[1][alpha];
      out.momentum_y[alpha] = -(modified.x_face[2][alpha] - modified.x_face[2][west]) * inv_dx -
                              (modified.y_face[2][alpha] - modified.y_face[2][south]) * inv_dy +
                              modified.source[2][alpha];
    }
  }
}

PdsSystem assemble_pds(const FluxResidual& modified, const Grid& grid) {
  PdsSystem pds = PdsSystem::for_grid(grid);
  assemble_pds(modified, grid, pds);
  return pds;
}

void write_pds_coordinates(const PdsSystem& pds, std::ostream& os) {
  os << std::setprecision(17);
  for (std::size_t row = 0; row < pds.rows; ++row) {
    for (int s = 0; s < pds.width; ++s) {
      if (pds.p(row, s) != 0.0) os << "p " << row << ' ' << pds.col(row, s) << ' ' << pds.p(row, s) << '\n';
    }
  }
  for (std::size_t row = 0; row < pds.rows; ++row) {
    for (int s = 0; s < pds.width; ++s) {
      if (pds.d(row, s) != 0.0) os << "d " << row << ' ' << pds.col(row, s) << ' ' << pds.d(row, s) << '\n';
    }
  }
}

}  // namespace mpdec
