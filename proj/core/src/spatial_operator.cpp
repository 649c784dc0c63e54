#include "mpdec/spatial_operator.hpp"

#include <utility>

namespace mpdec {

SpatialOperator::SpatialOperator(Grid grid, ReconstructionTables tables, Bathymetry bathymetry,
                                 OperatorOptions options)
    : grid_(grid), tables_(std::move(tables)), bathymetry_(std::move(bathymetry)), options_(options) {
  QuadratureRule rule{tables_.points, tables_.gauss_weights};
  rule.nodes.erase(rule.nodes.begin(), rule.nodes.begin() + 2);
  bathymetry_samples_ = sample_bathymetry(grid_, bathymetry_, rule);
}

FluxResidual SpatialOperator::residual(const StateField& field) const {
  const std::size_t cells = grid_.cell_count();
  const bool with_source = !bathymetry_.flat;
  FaceValues fv = reconstruct_all_faces(field, grid_, tables_, with_source);
  limited_cells_ += limit_positivity(fv, field, options_.eps_lim);

  const int nq = tables_.gauss_count();
  const std::span<const double> weights(tables_.gauss_weights);
  std::vector<ConservedState> left(nq);
  std::vector<ConservedState> right(nq);
  FluxResidual out(cells);

  auto store = [&out](std::array<std::vector<double>, 3>& dst, std::size_t alpha, const ConservedState& f) {
    dst[0][alpha] = f.h;
    dst[1][alpha] = f.hu;
    dst[2][alpha] = f.hv;
  };
  auto gather = [&fv, nq](std::vector<ConservedState>& dst, Side side, std::size_t alpha) {
    for (int q = 0; q < nq; ++q)
      dst[q] = {fv.value(0, side, q, alpha), fv.value(1, side, q, alpha), fv.value(2, side, q, alpha)};
  };

  for (int j = 0; j < grid_.ny; ++j) {
    for (int i = 0; i < grid_.nx; ++i) {
      const std::size_t alpha = grid_.index(i, j);
      gather(left, Side::East, alpha);
      gather(right, Side::West, grid_.index(i + 1, j));
      store(out.x_face, alpha, face_flux_average(left, right, weights, Direction::X, options_.physics));
      gather(left, Side::North, alpha);
      gather(right, Side::South, grid_.index(i, j + 1));
      store(out.y_face, alpha, face_flux_average(left, right, weights, Direction::Y, options_.physics));
    }
  }

  if (with_source) {
    const std::size_t nodes = static_cast<std::size_t>(nq) * nq;
    std::vector<double> h_nodes(nodes);
    std::vector<double> bx(nodes);
    std::vector<double> by(nodes);
    for (std::size_t alpha = 0; alpha < cells; ++alpha) {
      for (int a = 0; a < nq; ++a) {
        for (int b = 0; b < nq; ++b) {
          const std::size_t k = static_cast<std::size_t>(a) * nq + b;
          h_nodes[k] = fv.interior(a, b, alpha);
          bx[k] = bathymetry_samples_.dx_at(a, b, alpha);
          by[k] = bathymetry_samples_.dy_at(a, b, alpha);
        }
      }
      store(out.source, alpha, source_average(h_nodes, bx, by, weights, options_.physics));
    }
  }
  return out;
}

void SpatialOperator::evaluate(const StateField& field, PdsSystem& out) const {
  FluxResidual r = residual(field);
  if (reference_) subtract_reference(r, *reference_);
  assemble_pds(r, grid_, out);
}

void SpatialOperator::derivative(const StateField& field, StateField& dudt) const {
  PdsSystem pds = PdsSystem::for_grid(grid_);
  evaluate(field, pds);
  dudt = StateField(pds.rows);
  for (std::size_t alpha = 0; alpha < pds.rows; ++alpha) {
    dudt.h[alpha] = pds.net(alpha);
    dudt.hu[alpha] = pds.momentum_x[alpha];
    dudt.hv[alpha] = pds.momentum_y[alpha];
  }
}

ReferenceResidual precompute_reference(const SpatialOperator& op, const StateField& steady) {
  return op.residual(steady);
}

}  // namespace mpdec
