#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "mpdec/mesh.hpp"
#include "mpdec/swe.hpp"

namespace mpdec {

using ExactFn = std::function<ConservedState(double x, double y, double t)>;

/// A benchmark configuration: domain, bottom, initial data and solver defaults.
struct Scenario {
  std::string name;
  Bounds bounds;
  int default_nx = 50;
  int default_ny = 50;
  Bathymetry bathymetry = Bathymetry::zero();
  PointStateFn initial;
  ExactFn exact;          // empty when no exact solution is known
  PointStateFn steady;    // reference steady state for well-balancing; may be empty
  double final_time = 1.0;
  double cfl = 0.9;
  double eps_lim = 1e-6;
  double eps_div = 1e-6;
  double eps_weno = 1e-6;
  double gravity = kDefaultGravity;
  bool well_balanced = false;

  bool has_exact() const { return static_cast<bool>(exact); }
  bool has_steady() const { return static_cast<bool>(steady); }
  double aspect() const { return static_cast<double>(default_ny) / default_nx; }
};

enum class DamBreakKind { Dry, Wet };

Scenario vortex_scenario();
Scenario lake_at_rest_scenario();
/// Bump island lake at rest with free surface eta0; throws std::invalid_argument for eta0 <= 0.
Scenario island_scenario(double eta0);
Scenario perturbed_lake_scenario();
Scenario dam_break_scenario(DamBreakKind kind);
Scenario wave_over_island_scenario();

/// Names accepted by make_scenario.
const std::vector<std::string>& scenario_names();
/// Throws std::invalid_argument for an unknown name.
Scenario make_scenario(const std::string& name);

/// Bump b = exp(1 - 1 / (1 - r^2)) for r^2 < 1, centred at the origin.
Bathymetry bump_bathymetry();
Bathymetry sinusoidal_bathymetry();

/// Number of Gauss points per direction used for initial and exact cell averages.
inline constexpr int kInitPoints = 5;

/// Cell averages of the initial data, h floored at eps_lim (momentum zeroed where floored).
StateField initial_field(const Scenario& s, const Grid& grid, int points = kInitPoints);
/// Cell averages of the steady reference, floored like initial_field.
StateField steady_field(const Scenario& s, const Grid& grid, int points = kInitPoints);
/// Cell averages of the exact solution at time t.
StateField exact_field(const Scenario& s, const Grid& grid, double t, int points = kInitPoints);
std::vector<double> bathymetry_field(const Scenario& s, const Grid& grid, int points = kInitPoints);

/// sum |U - U_exact| dx dy per variable.
std::array<double, 3> l1_error(const StateField& field, const StateField& exact, const Grid& grid);
std::array<double, 3> l1_error(const StateField& field, const Scenario& s, const Grid& grid, double t,
                               int points = kInitPoints);

/// log(e1 / e2) / log(h1 / h2).
double observed_order(double e1, double e2, double h1, double h2);

struct ErrorRow {
  int nx = 0;
  int ny = 0;
  std::array<double, 3> error{};
  std::array<double, 3> order{};  // NaN when not available
  double seconds = 0.0;
  double jacobi_mean = 0.0;
  int jacobi_max = 0;
};

/// Errors below this are treated as exact and get no order.
inline constexpr double kOrderFloor = 1e-13;

struct ErrorReport {
  std::vector<ErrorRow> rows;

  /// Fills the order columns from consecutive rows, using dx ~ 1 / nx.
  void compute_orders();
};

}  // namespace mpdec
