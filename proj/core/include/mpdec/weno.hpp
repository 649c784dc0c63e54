#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "mpdec/mesh.hpp"

namespace mpdec {

/// Largest supported stencil radius r (order 2r - 1).
inline constexpr int kMaxWenoRadius = 8;

/// Coefficient tables for a dimension-by-dimension WENO reconstruction of order 2r - 1.
///
/// Evaluation points are normalized to the cell [-1/2, 1/2]: index 0 is the +1/2 face,
/// index 1 the -1/2 face, followed by the Gauss-Legendre nodes in ascending order.
/// Candidate stencil m covers the offsets -m .. r-1-m relative to the cell.
struct ReconstructionTables {
  static constexpr int kFacePlus = 0;
  static constexpr int kFaceMinus = 1;

  int radius = 1;
  double epsilon = 1e-6;
  std::vector<double> points;
  std::vector<double> gauss_weights;  // normalized, sum to 1

  std::vector<double> low_order;       // [(p * r + m) * r + c]
  std::vector<double> high_order;      // [p * (2r - 1) + k], k = offset + r - 1
  std::vector<double> linear_weights;  // [p * r + m]
  std::vector<double> smoothness;      // [(m * r + c) * r + c'], quadratic form per stencil

  int stencil_size() const { return 2 * radius - 1; }
  int point_count() const { return static_cast<int>(points.size()); }
  int gauss_count() const { return static_cast<int>(gauss_weights.size()); }
  int gauss_point(int q) const { return 2 + q; }

  double low(int p, int m, int c) const { return low_order[(static_cast<std::size_t>(p) * radius + m) * radius + c]; }
  /// Low-order coefficient addressed by stencil offset; zero outside stencil m.
  double low_at_offset(int p, int m, int offset) const;
  double high(int p, int offset) const {
    return high_order[static_cast<std::size_t>(p) * stencil_size() + offset + radius - 1];
  }
  double weight(int p, int m) const { return linear_weights[static_cast<std::size_t>(p) * radius + m]; }
};

/// Builds tables for stencil radius r with `gauss_point_count` face quadrature nodes.
///
/// Throws std::invalid_argument for bad arguments and std::runtime_error when the
/// linear-weight system is inconsistent or yields negative weights.
ReconstructionTables generate_tables(int r, int gauss_point_count, double epsilon);

/// Smoothness indicators beta_0 .. beta_{r-1} of a 2r-1 stencil.
std::vector<double> smoothness_indicators(std::span<const double> stencil, const ReconstructionTables& tables);

/// Normalized nonlinear weights omega_m for point p given the smoothness indicators.
void nonlinear_weights(std::span<const double> beta, const ReconstructionTables& tables, int p,
                       std::span<double> omega);

/// Nonlinear WENO value at evaluation point p.
double reconstruct_point(std::span<const double> stencil, const ReconstructionTables& tables, int p);

/// Evaluates several points of one stencil, sharing the smoothness indicators.
void reconstruct_points(std::span<const double> stencil, const ReconstructionTables& tables,
                        std::span<const int> points, std::span<double> out);

/// Low-order coefficients and linear weights as CSV:
/// point,xi,polynomial,offset,coefficient,linear_weight (17 significant digits).
void write_tables_csv(const ReconstructionTables& tables, std::ostream& os);

enum class Side { East = 0, West = 1, North = 2, South = 3 };

/// Reconstructed point values per cell.
///
/// For side s of cell alpha and face quadrature node q, value(c, s, q, alpha) is the state of
/// component c seen from inside the cell. Interior tensor-product values of h, when requested,
/// are stored at interior(qx, qy, alpha).
struct FaceValues {
  std::size_t cells = 0;
  int quad = 0;
  std::array<std::array<std::vector<double>, 4>, 3> sides;
  std::vector<double> interior_h;

  FaceValues() = default;
  FaceValues(std::size_t n_cells, int n_quad, bool with_interior);

  bool has_interior() const { return !interior_h.empty(); }

  double& value(int c, Side s, int q, std::size_t alpha) {
    return sides[c][static_cast<int>(s)][static_cast<std::size_t>(q) * cells + alpha];
  }
  double value(int c, Side s, int q, std::size_t alpha) const {
    return sides[c][static_cast<int>(s)][static_cast<std::size_t>(q) * cells + alpha];
  }
  double& interior(int qx, int qy, std::size_t alpha) {
    return interior_h[(static_cast<std::size_t>(qx) * quad + qy) * cells + alpha];
  }
  double interior(int qx, int qy, std::size_t alpha) const {
    return interior_h[(static_cast<std::size_t>(qx) * quad + qy) * cells + alpha];
  }
};

/// Two-sweep reconstruction of all face quadrature values (and optionally interior h values).
FaceValues reconstruct_all_faces(const StateField& field, const Grid& grid, const ReconstructionTables& tables,
                                 bool with_interior_h = false);

struct LimiterOutcome {
  double theta = 1.0;
  bool dry = false;  // cell mean below the floor; points reset to the mean
};

/// Scales point values of h towards the cell mean so that all of them are >= eps_lim.
LimiterOutcome positivity_limit(double cell_avg_h, std::span<double> point_values_h, double eps_lim);

/// Applies the limiter per cell to every reconstructed value, scaling h, hu, hv with one theta.
/// Returns the number of cells that were modified.
std::size_t limit_positivity(FaceValues& values, const StateField& field, double eps_lim);

}  // namespace mpdec
