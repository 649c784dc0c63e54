#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <vector>

#include "mpdec/mesh.hpp"

namespace mpdec {

/// Face-averaged numerical fluxes and cell-averaged sources of one state.
///
/// x_face[c][alpha] is F_{i+1/2,j} (east face of cell alpha), y_face[c][alpha] is G_{i,j+1/2}
/// (north face), source[c][alpha] is S_{i,j}.
struct FluxResidual {
  std::array<std::vector<double>, 3> x_face;
  std::array<std::vector<double>, 3> y_face;
  std::array<std::vector<double>, 3> source;

  FluxResidual() = default;
  explicit FluxResidual(std::size_t cells);
  std::size_t size() const { return x_face[0].size(); }
};

/// Residual of the steady state that is to be preserved, computed once per run.
using ReferenceResidual = FluxResidual;

/// Modified fluxes F(U) - F(U~), G(U) - G(U~), S(U) - S(U~). A null reference leaves them unchanged.
FluxResidual wb_fluxes(const FluxResidual& current, const ReferenceResidual* reference);
void subtract_reference(FluxResidual& current, const ReferenceResidual& reference);

/// Production-destruction system for h with explicit right-hand sides for hu and hv.
///
/// Every row stores `width` slots; slot s of row alpha couples alpha with cols[alpha * width + s].
/// On a grid the slots are the west, east, south and north neighbours (periodic).
struct PdsSystem {
  static constexpr int kWest = 0;
  static constexpr int kEast = 1;
  static constexpr int kSouth = 2;
  static constexpr int kNorth = 3;

  std::size_t rows = 0;
  int width = 0;
  std::vector<std::size_t> cols;
  std::vector<double> production;
  std::vector<double> destruction;
  std::vector<double> momentum_x;
  std::vector<double> momentum_y;

  PdsSystem() = default;
  PdsSystem(std::size_t n_rows, int n_width);
  static PdsSystem for_grid(const Grid& grid);

  std::size_t slot(std::size_t row, int s) const { return row * static_cast<std::size_t>(width) + s; }
  std::size_t col(std::size_t row, int s) const { return cols[slot(row, s)]; }
  double p(std::size_t row, int s) const { return production[slot(row, s)]; }
  double d(std::size_t row, int s) const { return destruction[slot(row, s)]; }

  /// sum_beta (p_{alpha beta} - d_{alpha beta}).
  double net(std::size_t row) const;
};

/// Fills `out` (shaped by PdsSystem::for_grid) from WB-modified fluxes.
void assemble_pds(const FluxResidual& modified, const Grid& grid, PdsSystem& out);
PdsSystem assemble_pds(const FluxResidual& modified, const Grid& grid);

/// Writes the nonzero p and d entries as "p|d row col value" lines.
void write_pds_coordinates(const PdsSystem& pds, std::ostream& os);

}  // namespace mpdec
