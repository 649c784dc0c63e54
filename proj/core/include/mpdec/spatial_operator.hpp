#pragma once

#include <optional>

#include "mpdec/balance.hpp"
#include "mpdec/mesh.hpp"
#include "mpdec/swe.hpp"
#include "mpdec/weno.hpp"

namespace mpdec {

struct OperatorOptions {
  PhysicsParams physics;
  double eps_lim = 1e-6;  // positivity limiter floor
};

/// Finite-volume semidiscretization: WENO reconstruction, positivity limiter, Rusanov face
/// averages, bathymetry source, optional well-balanced reference subtraction.
class SpatialOperator {
 public:
  SpatialOperator(Grid grid, ReconstructionTables tables, Bathymetry bathymetry, OperatorOptions options);

  /// Face fluxes and sources of a field, without reference subtraction.
  FluxResidual residual(const StateField& field) const;

  void set_reference(ReferenceResidual reference) { reference_ = std::move(reference); }
  void clear_reference() { reference_.reset(); }
  bool well_balanced() const { return reference_.has_value(); }
  const ReferenceResidual* reference() const { return reference_ ? &*reference_ : nullptr; }

  /// Modified residual assembled into the production-destruction form.
  void evaluate(const StateField& field, PdsSystem& out) const;

  /// dU/dt per cell (h from the PDS row sums).
  void derivative(const StateField& field, StateField& dudt) const;

  const Grid& grid() const { return grid_; }
  const ReconstructionTables& tables() const { return tables_; }
  const Bathymetry& bathymetry() const { return bathymetry_; }
  const OperatorOptions& options() const { return options_; }

  /// Cumulative number of limiter activations (cells), for diagnostics.
  std::size_t limited_cells() const { return limited_cells_; }

 private:
  Grid grid_;
  ReconstructionTables tables_;
  Bathymetry bathymetry_;
  OperatorOptions options_;
  BathymetrySamples bathymetry_samples_;
  std::optional<ReferenceResidual> reference_;
  mutable std::size_t limited_cells_ = 0;
};

/// Residual of the steady state `steady`, computed with the full pipeline of `op`.
ReferenceResidual precompute_reference(const SpatialOperator& op, const StateField& steady);

}  // namespace mpdec
