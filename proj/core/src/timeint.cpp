#include "mpdec/timeint.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mpdec/quadrature.hpp"

namespace mpdec {

DecTables build_dec_tables(int M, NodeFamily family) {
  if (M < 1) throw std::invalid_argument("build_dec_tables: M must be at least 1");
  DecTables t;
  t.M = M;
  if (family == NodeFamily::GaussLobatto) {
    t.nodes = gauss_lobatto_nodes(M + 1);
  } else {
    t.nodes.resize(M + 1);
    for (int m = 0; m <= M; ++m) t.nodes[m] = static_cast<double>(m) / M;
  }
  t.nodes.front() = 0.0;
  t.nodes.back() = 1.0;
  t.beta = t.nodes;
  t.theta.assign(static_cast<std::size_t>(M + 1) * (M + 1), 0.0);
  for (int r = 0; r <= M; ++r) {
    const Polynomial basis = Polynomial::lagrange_basis(t.nodes, r);
    for (int m = 1; m <= M; ++m) t.theta[static_cast<std::size_t>(m) * (M + 1) + r] = basis.integrate(0.0, t.nodes[m]);
  }
  return t;
}

PatankarMass::PatankarMass(const PdsSystem& shape)
    : rows(shape.rows),
      width(shape.width),
      cols(shape.cols),
      diag(shape.rows, 1.0),
      offdiag(shape.rows * shape.width, 0.0) {}

double PatankarMass::multiply_row(std::size_t row, std::span<const double> x) const {
  double acc = diag[row] * x[row];
  for (int s = 0; s < width; ++s) {
    const std::size_t k = row * width + s;
    acc += offdiag[k] * x[cols[k]];
  }
  return acc;
}

void assemble_mass(std::span<const PdsSystem* const> pds, std::span<const double> h_prev,
                   std::span<const double> theta_row, double dt, double eps_div, PatankarMass& out) {
  if (pds.empty() || pds.size() != theta_row.size())
    throw std::invalid_argument("assemble_mass: one system per weight is required");
  const PdsSystem& shape = *pds.front();
  if (out.rows != shape.rows || out.width != shape.width) out = PatankarMass(shape);
  std::fill(out.diag.begin(), out.diag.end(), 1.0);
  std::fill(out.offdiag.begin(), out.offdiag.end(), 0.0);
  out.cols = shape.cols;

  for (std::size_t r = 0; r < pds.size(); ++r) {
    const double theta = theta_row[r];
    if (theta == 0.0) continue;
    const PdsSystem& sys = *pds[r];
    const double w = dt * theta;
    for (std::size_t alpha = 0; alpha < sys.rows; ++alpha) {
      for (int s = 0; s < sys.width; ++s) {
        const std::size_t k = sys.slot(alpha, s);
        const std::size_t beta = sys.cols[k];
        const double p = sys.production[k];
        const double d = sys.destruction[k];
        if (theta > 0.0) {
          out.offdiag[k] -= w * patankar_division(p, h_prev[beta], eps_div);
          out.diag[alpha] += w * patankar_division(d, h_prev[alpha], eps_div);
        } else {
          out.offdiag[k] += w * patankar_division(d, h_prev[beta], eps_div);
          out.diag[alpha] -= w * patankar_division(p, h_prev[alpha], eps_div);
        }
      }
    }
  }
}

PatankarMass assemble_mass(const PdsSystem& pds, std::span<const double> h_prev, double theta, double dt,
                           double eps_div) {
  PatankarMass mass(pds);
  const PdsSystem* ptr = &pds;
  assemble_mass(std::span<const PdsSystem* const>(&ptr, 1), h_prev, std::span<const double>(&theta, 1), dt,
                eps_div, mass);
  return mass;
}

JacobiResult jacobi_solve(const PatankarMass& mass, std::span<const double> rhs, double tol, int max_iter) {
  const std::size_t n = mass.rows;
  if (rhs.size() != n) throw std::invalid_argument("jacobi_solve: rhs size mismatch");
  if (tol <= 0.0) {
    double scale = 0.0;
    for (double v : rhs) scale = std::max(scale, std::abs(v));
    tol = kDefaultJacobiRelTol * scale;
  }
  JacobiResult res;
  res.x.assign(rhs.begin(), rhs.end());
  std::vector<double> next(n);
  for (int it = 1; it <= max_iter; ++it) {
    double change = 0.0;
    for (std::size_t a = 0; a < n; ++a) {
      double acc = rhs[a];
      for (int s = 0; s < mass.width; ++s) {
        const std::size_t k = a * mass.width + s;
        acc -= mass.offdiag[k] * res.x[mass.cols[k]];
      }
      next[a] = acc / mass.diag[a];
      if (!std::isfinite(next[a])) throw SolverError("jacobi_solve: iterate is not finite", it);
      change = std::max(change, std::abs(next[a] - res.x[a]));
    }
    res.x.swap(next);
    res.iterations = it;
    if (change <= tol) return res;
  }
  throw SolverError("jacobi_solve: no convergence after " + std::to_string(max_iter) + " iterations", max_iter);
}

StepStats& StepStats::operator+=(const StepStats& o) {
  evaluations += o.evaluations;
  solves += o.solves;
  jacobi_iterations += o.jacobi_iterations;
  jacobi_max = std::max(jacobi_max, o.jacobi_max);
  return *this;
}

StateField mpdec_step(const StateField& un, double dt, const PdsFn& f, const DecTables& tables, int K,
                      const MpdecOptions& options, StepStats* stats) {
  if (K < 1) throw std::invalid_argument("mpdec_step: K must be at least 1");
  const int M = tables.M;
  const std::size_t n = un.size();
  StepStats local;

  std::vector<PdsSystem> evals(M + 1);
  std::vector<const PdsSystem*> src(M + 1);
  std::vector<StateField> prev(M + 1, un);
  std::vector<StateField> next(M + 1, un);
  PatankarMass mass;

  f(un, evals[0]);
  ++local.evaluations;
  for (int k = 1; k <= K; ++k) {
    for (int r = 0; r <= M; ++r) {
      if (k == 1 || r == 0) {
        src[r] = &evals[0];
      } else {
        f(prev[r], evals[r]);
        ++local.evaluations;
        src[r] = &evals[r];
      }
    }
    for (int m = 1; m <= M; ++m) {
      const std::span<const double> theta = tables.row(m);
      assemble_mass(src, prev[m].h, theta, dt, options.eps_div, mass);
      JacobiResult sol = jacobi_solve(mass, un.h, 0.0, options.jacobi_max_iter);
      ++local.solves;
      local.jacobi_iterations += sol.iterations;
      local.jacobi_max = std::max(local.jacobi_max, sol.iterations);
      StateField& y = next[m];
      y.h = std::move(sol.x);
      for (std::size_t a = 0; a < n; ++a) {
        double mx = 0.0;
        double my = 0.0;
        for (int r = 0; r <= M; ++r) {
          mx += theta[r] * src[r]->momentum_x[a];
          my += theta[r] * src[r]->momentum_y[a];
        }
        y.hu[a] = un.hu[a] + dt * mx;
        y.hv[a] = un.hv[a] + dt * my;
      }
    }
    std::swap(prev, next);
  }

  StateField out = std::move(prev[M]);
  if (options.dry_floor > 0.0) {
    for (std::size_t a = 0; a < n; ++a) {
      if (out.h[a] < options.dry_floor) {
        out.hu[a] = 0.0;
        out.hv[a] = 0.0;
      }
    }
  }
  if (stats != nullptr) *stats += local;
  return out;
}

StateField dec_step(const StateField& un, double dt, const RhsFn& f, const DecTables& tables, int K,
                    StepStats* stats) {
  if (K < 1) throw std::invalid_argument("dec_step: K must be at least 1");
  const int M = tables.M;
  const std::size_t n = un.size();
  StepStats local;

  std::vector<StateField> rates(M + 1);
  std::vector<const StateField*> src(M + 1);
  std::vector<StateField> prev(M + 1, un);
  std::vector<StateField> next(M + 1, un);

  f(un, rates[0]);
  ++local.evaluations;
  for (int k = 1; k <= K; ++k) {
    for (int r = 0; r <= M; ++r) {
      if (k == 1 || r == 0) {
        src[r] = &rates[0];
      } else {
        f(prev[r], rates[r]);
        ++local.evaluations;
        src[r] = &rates[r];
      }
    }
    for (int m = 1; m <= M; ++m) {
      const std::span<const double> theta = tables.row(m);
      for (int c = 0; c < 3; ++c) {
        const std::vector<double>& base = un.component(c);
        std::vector<double>& y = next[m].component(c);
        for (std::size_t a = 0; a < n; ++a) {
          double acc = 0.0;
          for (int r = 0; r <= M; ++r) acc += theta[r] * src[r]->component(c)[a];
          y[a] = base[a] + dt * acc;
        }
      }
    }
    std::swap(prev, next);
  }
  if (stats != nullptr) *stats += local;
  return std::move(prev[M]);
}

}  // namespace mpdec
