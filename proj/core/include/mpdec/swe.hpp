#pragma once

#include <functional>
#include <span>
#include <vector>

#include "mpdec/mesh.hpp"
#include "mpdec/quadrature.hpp"

namespace mpdec {

inline constexpr double kDefaultGravity = 9.81;

struct PhysicsParams {
  double gravity = kDefaultGravity;
  double eps_div = 1e-6;  // regularization of u = hu / h
};

enum class Direction { X, Y };

/// Physical flux along one direction: F for X, G for Y.
ConservedState physical_flux(const ConservedState& u, Direction dir, const PhysicsParams& params);

/// Largest |u_n| + sqrt(g h) of a state.
double wave_speed(const ConservedState& u, Direction dir, const PhysicsParams& params);

/// Rusanov (local Lax-Friedrichs) flux with s_max taken over both states.
ConservedState rusanov_flux(const ConservedState& left, const ConservedState& right, Direction dir,
                            const PhysicsParams& params);

/// (1 / |face|) * sum_q w_q F^(uL_q, uR_q), with weights normalized to sum to one.
ConservedState face_flux_average(std::span<const ConservedState> left, std::span<const ConservedState> right,
                                 std::span<const double> weights, Direction dir, const PhysicsParams& params);

/// Bottom elevation b(x, y) with its analytic gradient.
struct Bathymetry {
  std::function<double(double, double)> elevation;
  std::function<double(double, double)> d_dx;
  std::function<double(double, double)> d_dy;
  bool flat = true;

  static Bathymetry zero();
  double operator()(double x, double y) const { return elevation ? elevation(x, y) : 0.0; }
};

/// Gradient of b at the tensor-product Gauss nodes of every cell, [(qx * nq + qy) * cells + alpha].
struct BathymetrySamples {
  int quad = 0;
  std::size_t cells = 0;
  std::vector<double> d_dx;
  std::vector<double> d_dy;

  double dx_at(int qx, int qy, std::size_t alpha) const {
    return d_dx[(static_cast<std::size_t>(qx) * quad + qy) * cells + alpha];
  }
  double dy_at(int qx, int qy, std::size_t alpha) const {
    return d_dy[(static_cast<std::size_t>(qx) * quad + qy) * cells + alpha];
  }
};

BathymetrySamples sample_bathymetry(const Grid& grid, const Bathymetry& b, const QuadratureRule& rule);

/// Cell average of -g h grad(b) from h at the interior nodes of one cell, h_nodes[qx * nq + qy].
/// The h component of the result is exactly zero.
ConservedState source_average(std::span<const double> h_nodes, std::span<const double> bx_nodes,
                              std::span<const double> by_nodes, std::span<const double> weights,
                              const PhysicsParams& params);

/// CFL time step, truncated so that t + dt does not pass t_end.
///
/// dt = cfl / max_cells(s_x / dx + s_y / dy). A field with no wave speed anywhere returns t_end - t.
double compute_dt(const StateField& field, const Grid& grid, double cfl, const PhysicsParams& params, double t,
                  double t_end);

}  // namespace mpdec
