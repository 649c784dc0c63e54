#include "mpdec/weno.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <stdexcept>
#include <string>

#include "mpdec/quadrature.hpp"

namespace mpdec {
namespace {

constexpr int kMaxStencil = 2 * kMaxWenoRadius - 1;

// Polynomials Phi_c with (1/|cell|) * integral of Phi_c over cell c' = delta_{c c'} for the
// n cells starting at offset `first`. Built as derivatives of the Lagrange interpolant of the
// primitive function at the cell interfaces.
std::vector<Polynomial> cell_basis(int first, int n) {
  std::vector<double> interfaces(n + 1);
  for (int k = 0; k <= n; ++k) interfaces[k] = first - 0.5 + k;
  std::vector<Polynomial> dphi(n + 1);
  for (int k = 0; k <= n; ++k) dphi[k] = Polynomial::lagrange_basis(interfaces, k).derivative();
  std::vector<Polynomial> basis(n);
  for (int c = 0; c < n; ++c) {
    Polynomial sum = Polynomial::constant(0.0);
    for (int k = c + 1; k <= n; ++k) sum += dphi[k];
    basis[c] = sum;
  }
  return basis;
}

ReconstructionTables build_tables(int r, const std::vector<double>& points, std::vector<double> gauss_weights,
                                  double epsilon) {
  ReconstructionTables t;
  t.radius = r;
  t.epsilon = epsilon;
  t.points = points;
  t.gauss_weights = std::move(gauss_weights);
  const int np = t.point_count();
  const int ns = t.stencil_size();

  const std::vector<Polynomial> high = cell_basis(-(r - 1), ns);
  std::vector<std::vector<Polynomial>> low(r);
  for (int m = 0; m < r; ++m) low[m] = cell_basis(-m, r);

  t.high_order.resize(static_cast<std::size_t>(np) * ns);
  t.low_order.resize(static_cast<std::size_t>(np) * r * r);
  t.linear_weights.resize(static_cast<std::size_t>(np) * r);
  for (int p = 0; p < np; ++p) {
    const double xi = points[p];
    for (int k = 0; k < ns; ++k) t.high_order[static_cast<std::size_t>(p) * ns + k] = high[k](xi);
    for (int m = 0; m < r; ++m)
      for (int c = 0; c < r; ++c) t.low_order[(static_cast<std::size_t>(p) * r + m) * r + c] = low[m][c](xi);

    // sum_m d_m c^lo_{m,l} = c^ho_l for every offset l: overdetermined but consistent.
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(ns, r);
    Eigen::VectorXd b(ns);
    for (int k = 0; k < ns; ++k) {
      b(k) = t.high_order[static_cast<std::size_t>(p) * ns + k];
      const int offset = k - (r - 1);
      for (int m = 0; m < r; ++m) a(k, m) = t.low_at_offset(p, m, offset);
    }
    const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
    if (qr.rank() < r) {
      throw std::runtime_error("generate_tables: linear-weight system is rank deficient at point " +
                               std::to_string(xi));
    }
    const Eigen::VectorXd d = qr.solve(b);
    const double residual = (a * d - b).lpNorm<Eigen::Infinity>();
    if (residual > 1e-10) {
      throw std::runtime_error("generate_tables: no exact linear weights at point " + std::to_string(xi));
    }
    for (int m = 0; m < r; ++m) {
      if (d(m) < 0.0) {
        throw std::runtime_error("generate_tables: negative linear weight at point " + std::to_string(xi) +
                                 " (stencil " + std::to_string(m) + ")");
      }
      t.linear_weights[static_cast<std::size_t>(p) * r + m] = d(m);
    }
  }

  // beta_m = sum_k integral over the cell of (d^k p_m)^2, in cell-normalized coordinates.
  t.smoothness.assign(static_cast<std::size_t>(r) * r * r, 0.0);
  for (int m = 0; m < r; ++m) {
    std::vector<Polynomial> deriv = low[m];
    for (int k = 1; k < r; ++k) {
      for (auto& poly : deriv) poly = poly.derivative();
      for (int c = 0; c < r; ++c)
        for (int c2 = 0; c2 < r; ++c2)
          t.smoothness[(static_cast<std::size_t>(m) * r + c) * r + c2] += (deriv[c] * deriv[c2]).integrate(-0.5, 0.5);
    }
  }
  return t;
}

// Smoothness indicators into a fixed-size buffer.
void compute_beta(const double* q, const ReconstructionTables& t, double* beta) {
  const int r = t.radius;
  for (int m = 0; m < r; ++m) {
    const double* sub = q + (r - 1 - m);
    const double* form = t.smoothness.data() + static_cast<std::size_t>(m) * r * r;
    double acc = 0.0;
    for (int c = 0; c < r; ++c) {
      double row = 0.0;
      for (int c2 = 0; c2 < r; ++c2) row += form[c * r + c2] * sub[c2];
      acc += sub[c] * row;
    }
    beta[m] = acc;
  }
}

double weno_value(const double* q, const double* beta, const ReconstructionTables& t, int p) {
  const int r = t.radius;
  const double* d = t.linear_weights.data() + static_cast<std::size_t>(p) * r;
  const double* lo = t.low_order.data() + static_cast<std::size_t>(p) * r * r;
  double num = 0.0;
  double den = 0.0;
  for (int m = 0; m < r; ++m) {
    const double s = beta[m] + t.epsilon;
    const double alpha = d[m] / (s * s);
    const double* sub = q + (r - 1 - m);
    double candidate = 0.0;
    for (int c = 0; c < r; ++c) candidate += lo[m * r + c] * sub[c];
    num += alpha * candidate;
    den += alpha;
  }
  return num / den;
}

enum class Axis { X, Y };

// 1D reconstruction along `axis` for every cell; out[k][alpha] receives point points[k].
void sweep(const Grid& grid, Axis axis, const double* src, const ReconstructionTables& t,
           std::span<const int> points, std::span<double* const> out) {
  const int r = t.radius;
  const int ns = t.stencil_size();
  std::array<double, kMaxStencil> q{};
  std::array<double, kMaxWenoRadius> beta{};
  for (int j = 0; j < grid.ny; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      for (int k = 0; k < ns; ++k) {
        const int o = k - (r - 1);
        q[k] = axis == Axis::X ? src[grid.index(i + o, j)] : src[grid.index(i, j + o)];
      }
      compute_beta(q.data(), t, beta.data());
      const std::size_t alpha = grid.index(i, j);
      for (std::size_t k = 0; k < points.size(); ++k) out[k][alpha] = weno_value(q.data(), beta.data(), t, points[k]);
    }
  }
}

}  // namespace

double ReconstructionTables::low_at_offset(int p, int m, int offset) const {
  const int c = offset + m;
  if (c < 0 || c >= radius) return 0.0;
  return low(p, m, c);
}

ReconstructionTables generate_tables(int r, int gauss_point_count, double epsilon) {
  if (r < 1 || r > kMaxWenoRadius) {
    throw std::invalid_argument("generate_tables: radius must be in [1, " + std::to_string(kMaxWenoRadius) + "]");
  }
  if (gauss_point_count < 1) throw std::invalid_argument("generate_tables: need at least one Gauss point");
  if (!(epsilon > 0.0)) throw std::invalid_argument("generate_tables: epsilon must be positive");
  const QuadratureRule rule = gauss_legendre(gauss_point_count);
  std::vector<double> points = {0.5, -0.5};
  points.insert(points.end(), rule.nodes.begin(), rule.nodes.end());
  return build_tables(r, points, rule.weights, epsilon);
}

std::vector<double> smoothness_indicators(std::span<const double> stencil, const ReconstructionTables& tables) {
  if (static_cast<int>(stencil.size()) != tables.stencil_size()) {
    throw std::invalid_argument("smoothness_indicators: stencil length must be 2r-1");
  }
  std::vector<double> beta(tables.radius);
  compute_beta(stencil.data(), tables, beta.data());
  return beta;
}

void nonlinear_weights(std::span<const double> beta, const ReconstructionTables& tables, int p,
                       std::span<double> omega) {
  double sum = 0.0;
  for (int m = 0; m < tables.radius; ++m) {
    const double s = beta[m] + tables.epsilon;
    omega[m] = tables.weight(p, m) / (s * s);
    sum += omega[m];
  }
  for (int m = 0; m < tables.radius; ++m) omega[m] /= sum;
}

double reconstruct_point(std::span<const double> stencil, const ReconstructionTables& tables, int p) {
  if (static_cast<int>(stencil.size()) != tables.stencil_size()) {
    throw std::invalid_argument("reconstruct_point: stencil length must be 2r-1");
  }
  std::array<double, kMaxWenoRadius> beta{};
  compute_beta(stencil.data(), tables, beta.data());
  return weno_value(stencil.data(), beta.data(), tables, p);
}

void reconstruct_points(std::span<const double> stencil, const ReconstructionTables& tables,
                        std::span<const int> points, std::span<double> out) {
  std::array<double, kMaxWenoRadius> beta{};
  compute_beta(stencil.data(), tables, beta.data());
  for (std::size_t k = 0; k < points.size(); ++k) out[k] = weno_value(stencil.data(), beta.data(), tables, points[k]);
}

FaceValues::FaceValues(std::size_t n_cells, int n_quad, bool with_interior) : cells(n_cells), quad(n_quad) {
  for (auto& comp : sides)
    for (auto& side : comp) side.assign(n_cells * static_cast<std::size_t>(n_quad), 0.0);
  if (with_interior) interior_h.assign(n_cells * static_cast<std::size_t>(n_quad) * n_quad, 0.0);
}

FaceValues reconstruct_all_faces(const StateField& field, const Grid& grid, const ReconstructionTables& tables,
                                 bool with_interior_h) {
  const std::size_t n = grid.cell_count();
  const int nq = tables.gauss_count();
  FaceValues fv(n, nq, with_interior_h);

  std::vector<int> face_points = {ReconstructionTables::kFacePlus, ReconstructionTables::kFaceMinus};
  std::vector<int> gauss_points(nq);
  for (int q = 0; q < nq; ++q) gauss_points[q] = tables.gauss_point(q);

  std::vector<double> plus(n), minus(n);
  std::vector<std::vector<double>> line(nq, std::vector<double>(n));
  std::vector<double*> outs;

  auto second_sweep = [&](Axis axis, const std::vector<double>& src, std::vector<double>& dst) {
    outs.clear();
    for (int q = 0; q < nq; ++q) outs.push_back(dst.data() + static_cast<std::size_t>(q) * n);
    sweep(grid, axis, src.data(), tables, gauss_points, outs);
  };

  for (int c = 0; c < 3; ++c) {
    const std::vector<double>& avg = field.component(c);
    const bool interior = with_interior_h && c == 0;

    // x faces: y-averaged values at x_{i +- 1/2}, then Gauss nodes along y.
    std::vector<int> x_points = face_points;
    outs = {plus.data(), minus.data()};
    if (interior) {
      x_points.insert(x_points.end(), gauss_points.begin(), gauss_points.end());
      for (int q = 0; q < nq; ++q) outs.push_back(line[q].data());
    }
    sweep(grid, Axis::X, avg.data(), tables, x_points, outs);
    second_sweep(Axis::Y, plus, fv.sides[c][static_cast<int>(Side::East)]);
    second_sweep(Axis::Y, minus, fv.sides[c][static_cast<int>(Side::West)]);
    if (interior) {
      for (int qx = 0; qx < nq; ++qx) {
        outs.clear();
        for (int qy = 0; qy < nq; ++qy) outs.push_back(&fv.interior(qx, qy, 0));
        sweep(grid, Axis::Y, line[qx].data(), tables, gauss_points, outs);
      }
    }

    // y faces: x-averaged values at y_{j +- 1/2}, then Gauss nodes along x.
    outs = {plus.data(), minus.data()};
    sweep(grid, Axis::Y, avg.data(), tables, face_points, outs);
    second_sweep(Axis::X, plus, fv.sides[c][static_cast<int>(Side::North)]);
    second_sweep(Axis::X, minus, fv.sides[c][static_cast<int>(Side::South)]);
  }
  return fv;
}

LimiterOutcome positivity_limit(double cell_avg_h, std::span<double> point_values_h, double eps_lim) {
  LimiterOutcome out;
  if (cell_avg_h < eps_lim) {
    std::fill(point_values_h.begin(), point_values_h.end(), cell_avg_h);
    out.theta = 0.0;
    out.dry = true;
    return out;
  }
  const double lowest = *std::min_element(point_values_h.begin(), point_values_h.end());
  if (lowest >= eps_lim) return out;
  out.theta = std::min(1.0, (cell_avg_h - eps_lim) / (cell_avg_h - lowest));
  for (double& v : point_values_h) v = cell_avg_h + out.theta * (v - cell_avg_h);
  return out;
}

std::size_t limit_positivity(FaceValues& values, const StateField& field, double eps_lim) {
  std::size_t modified = 0;
  const int nq = values.quad;
  for (std::size_t alpha = 0; alpha < values.cells; ++alpha) {
    const double mean = field.h[alpha];
    double lowest = mean;
    for (int s = 0; s < 4; ++s)
      for (int q = 0; q < nq; ++q) lowest = std::min(lowest, values.value(0, static_cast<Side>(s), q, alpha));
    if (values.has_interior())
      for (int a = 0; a < nq; ++a)
        for (int b = 0; b < nq; ++b) lowest = std::min(lowest, values.interior(a, b, alpha));

    const bool dry = mean < eps_lim;
    if (!dry && lowest >= eps_lim) continue;
    const double theta = dry ? 0.0 : std::min(1.0, (mean - eps_lim) / (mean - lowest));
    for (int c = 0; c < 3; ++c) {
      const double avg = field.component(c)[alpha];
      for (int s = 0; s < 4; ++s) {
        for (int q = 0; q < nq; ++q) {
          double& v = values.value(c, static_cast<Side>(s), q, alpha);
          v = avg + theta * (v - avg);
        }
      }
    }
    if (values.has_interior())
      for (int a = 0; a < nq; ++a)
        for (int b = 0; b < nq; ++b) {
          double& v = values.interior(a, b, alpha);
          v = mean + theta * (v - mean);
        }
    ++modified;
  }
  return modified;
}

void write_tables_csv(const ReconstructionTables& tables, std::ostream& os) {
  const int r = tables.radius;
  os << std::setprecision(17);
  os << "point,xi,polynomial,offset,coefficient,linear_weight\n";
  for (int p = 0; p < tables.point_count(); ++p) {
    for (int m = 0; m < r; ++m) {
      for (int c = 0; c < r; ++c) {
        os << p << ',' << tables.points[p] << ',' << m << ',' << c - m << ',' << tables.low(p, m, c) << ','
           << tables.weight(p, m) << '\n';
      }
    }
  }
}

}  // namespace mpdec
