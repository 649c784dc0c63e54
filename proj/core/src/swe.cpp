#include "mpdec/swe.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mpdec/patankar.hpp"

namespace mpdec {

ConservedState physical_flux(const ConservedState& u, Direction dir, const PhysicsParams& params) {
  const double pressure = 0.5 * params.gravity * u.h * u.h;
  if (dir == Direction::X) {
    const double vel = patankar_division(u.hu, u.h, params.eps_div);
    return {u.hu, u.hu * vel + pressure, u.hv * vel};
  }
  const double vel = patankar_division(u.hv, u.h, params.eps_div);
  return {u.hv, u.hu * vel, u.hv * vel + pressure};
}

double wave_speed(const ConservedState& u, Direction dir, const PhysicsParams& params) {
  const double normal = dir == Direction::X ? u.hu : u.hv;
  const double h = std::max(u.h, 0.0);
  return std::abs(patankar_division(normal, h, params.eps_div)) + std::sqrt(params.gravity * h);
}

ConservedState rusanov_flux(const ConservedState& left, const ConservedState& right, Direction dir,
                            const PhysicsParams& params) {
  const ConservedState fl = physical_flux(left, dir, params);
  const ConservedState fr = physical_flux(right, dir, params);
  const double s = std::max(wave_speed(left, dir, params), wave_speed(right, dir, params));
  return {0.5 * (fr.h + fl.h) - 0.5 * s * (right.h - left.h),
          0.5 * (fr.hu + fl.hu) - 0.5 * s * (right.hu - left.hu),
          0.5 * (fr.hv + fl.hv) - 0.5 * s * (right.hv - left.hv)};
}

ConservedState face_flux_average(std::span<const ConservedState> left, std::span<const ConservedState> right,
                                 std::span<const double> weights, Direction dir, const PhysicsParams& params) {
  ConservedState acc;
  for (std::size_t q = 0; q < weights.size(); ++q) {
    const ConservedState f = rusanov_flux(left[q], right[q], dir, params);
    acc.h += weights[q] * f.h;
    acc.hu += weights[q] * f.hu;
    acc.hv += weights[q] * f.hv;
  }
  return acc;
}

Bathymetry Bathymetry::zero() {
  Bathymetry b;
  b.elevation = [](double, double) { return 0.0; };
  b.d_dx = [](double, double) { return 0.0; };
  b.d_dy = [](double, double) { return 0.0; };
  b.flat = true;
  return b;
}

BathymetrySamples sample_bathymetry(const Grid& grid, const Bathymetry& b, const QuadratureRule& rule) {
  BathymetrySamples s;
  s.quad = static_cast<int>(rule.size());
  s.cells = grid.cell_count();
  const std::size_t total = static_cast<std::size_t>(s.quad) * s.quad * s.cells;
  s.d_dx.assign(total, 0.0);
  s.d_dy.assign(total, 0.0);
  if (b.flat) return s;
  for (int j = 0; j < grid.ny; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      const std::size_t alpha = grid.index(i, j);
      for (int qx = 0; qx < s.quad; ++qx) {
        const double x = grid.x_center(i) + grid.dx * rule.nodes[qx];
        for (int qy = 0; qy < s.quad; ++qy) {
          const double y = grid.y_center(j) + grid.dy * rule.nodes[qy];
          const std::size_t k = (static_cast<std::size_t>(qx) * s.quad + qy) * s.cells + alpha;
          s.d_dx[k] = b.d_dx(x, y);
          s.d_dy[k] = b.d_dy(x, y);
        }
      }
    }
  }
  return s;
}

ConservedState source_average(std::span<const double> h_nodes, std::span<const double> bx_nodes,
                              std::span<const double> by_nodes, std::span<const double> weights,
                              const PhysicsParams& params) {
  const std::size_t nq = weights.size();
  double sx = 0.0;
  double sy = 0.0;
  for (std::size_t a = 0; a < nq; ++a) {
    for (std::size_t b = 0; b < nq; ++b) {
      const std::size_t k = a * nq + b;
      const double w = weights[a] * weights[b] * h_nodes[k];
      sx += w * bx_nodes[k];
      sy += w * by_nodes[k];
    }
  }
  return {0.0, -params.gravity * sx, -params.gravity * sy};
}

double compute_dt(const StateField& field, const Grid& grid, double cfl, const PhysicsParams& params, double t,
                  double t_end) {
  if (!(cfl > 0.0)) throw std::invalid_argument("compute_dt: cfl must be positive");
  double rate = 0.0;
  for (std::size_t alpha = 0; alpha < field.size(); ++alpha) {
    const ConservedState u = field.at(alpha);
    rate = std::max(rate, wave_speed(u, Direction::X, params) / grid.dx + wave_speed(u, Direction::Y, params) / grid.dy);
  }
  const double remaining = t_end - t;
  if (!(rate > 0.0)) return remaining;
  return std::min(cfl / rate, remaining);
}

}  // namespace mpdec
