#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

#include "mpdec/balance.hpp"
#include "mpdec/mesh.hpp"
#include "mpdec/patankar.hpp"

namespace mpdec {

enum class NodeFamily { GaussLobatto, Equispaced };

/// Subtimestep nodes and integration weights of the deferred-correction operators.
struct DecTables {
  int M = 0;
  std::vector<double> nodes;  // t^0 .. t^M in [0, 1]
  std::vector<double> theta;  // theta[m * (M + 1) + r] = int_0^{t^m} l_r
  std::vector<double> beta;   // beta^m = t^m

  double weight(int m, int r) const { return theta[static_cast<std::size_t>(m) * (M + 1) + r]; }
  std::span<const double> row(int m) const {
    return std::span<const double>(theta).subspan(static_cast<std::size_t>(m) * (M + 1), M + 1);
  }
};

/// Throws std::invalid_argument for M < 1.
DecTables build_dec_tables(int M, NodeFamily family = NodeFamily::GaussLobatto);

/// alpha for theta >= 0, beta otherwise.
constexpr std::size_t gamma_select(std::size_t alpha, std::size_t beta, double theta) {
  return theta >= 0.0 ? alpha : beta;
}

/// Patankar-weighted mass matrix: unit diagonal plus the coupling pattern of a PdsSystem.
struct PatankarMass {
  std::size_t rows = 0;
  int width = 0;
  std::vector<std::size_t> cols;
  std::vector<double> diag;
  std::vector<double> offdiag;  // [row * width + slot]

  PatankarMass() = default;
  explicit PatankarMass(const PdsSystem& shape);

  double multiply_row(std::size_t row, std::span<const double> x) const;
};

/// Builds the mass matrix for one subtimestep from the systems evaluated at r = 0..M.
///
/// pds[r] may alias; theta_row[r] is theta_r^m; h_prev is h^{m,(k-1)}.
void assemble_mass(std::span<const PdsSystem* const> pds, std::span<const double> h_prev,
                   std::span<const double> theta_row, double dt, double eps_div, PatankarMass& out);
PatankarMass assemble_mass(const PdsSystem& pds, std::span<const double> h_prev, double theta, double dt,
                           double eps_div);

class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, int iterations) : std::runtime_error(what), iterations_(iterations) {}
  int iterations() const { return iterations_; }

 private:
  int iterations_;
};

struct JacobiResult {
  std::vector<double> x;
  int iterations = 0;
};

inline constexpr double kDefaultJacobiRelTol = 1e-14;
inline constexpr int kDefaultJacobiMaxIter = 1000;

/// Jacobi iteration from x0 = rhs until ||x^{k+1} - x^k||_inf <= tol.
/// A non-positive tol selects 1e-14 * ||rhs||_inf. Throws SolverError after max_iter sweeps.
JacobiResult jacobi_solve(const PatankarMass& mass, std::span<const double> rhs, double tol = 0.0,
                          int max_iter = kDefaultJacobiMaxIter);

struct MpdecOptions {
  double eps_div = 1e-6;
  double jacobi_rel_tol = kDefaultJacobiRelTol;
  int jacobi_max_iter = kDefaultJacobiMaxIter;
  double dry_floor = 0.0;  // momentum is zeroed in cells with h below this after the step
};

struct StepStats {
  int evaluations = 0;
  int solves = 0;
  long long jacobi_iterations = 0;
  int jacobi_max = 0;

  double jacobi_mean() const { return solves > 0 ? static_cast<double>(jacobi_iterations) / solves : 0.0; }
  StepStats& operator+=(const StepStats& o);
};

/// Evaluates the production-destruction form of the semidiscretization at a state.
using PdsFn = std::function<void(const StateField&, PdsSystem&)>;
/// Evaluates dU/dt at a state.
using RhsFn = std::function<void(const StateField&, StateField&)>;

/// One modified Patankar DeC step: h by Patankar mass solves, hu and hv by explicit DeC.
StateField mpdec_step(const StateField& un, double dt, const PdsFn& f, const DecTables& tables, int K,
                      const MpdecOptions& options = {}, StepStats* stats = nullptr);

/// One explicit DeC step on all components.
StateField dec_step(const StateField& un, double dt, const RhsFn& f, const DecTables& tables, int K,
                    StepStats* stats = nullptr);

}  // namespace mpdec
