#include "mpdec/cases.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace mpdec {
namespace {

constexpr double kPi = std::numbers::pi;

double wrap_coordinate(double x, double lo, double hi) {
  const double len = hi - lo;
  double r = std::fmod(x - lo, len);
  if (r < 0.0) r += len;
  return lo + r;
}

// exp(1 - 1/s) for s in (0, 1], 0 otherwise; underflows long before s reaches zero.
double bump_profile(double s) {
  if (s < 1e-3) return 0.0;
  return std::exp(1.0 - 1.0 / s);
}

}  // namespace

Bathymetry bump_bathymetry() {
  Bathymetry b;
  b.flat = false;
  b.elevation = [](double x, double y) { return bump_profile(1.0 - (x * x + y * y)); };
  b.d_dx = [](double x, double y) {
    const double s = 1.0 - (x * x + y * y);
    const double v = bump_profile(s);
    return v == 0.0 ? 0.0 : -2.0 * x * v / (s * s);
  };
  b.d_dy = [](double x, double y) {
    const double s = 1.0 - (x * x + y * y);
    const double v = bump_profile(s);
    return v == 0.0 ? 0.0 : -2.0 * y * v / (s * s);
  };
  return b;
}

Bathymetry sinusoidal_bathymetry() {
  Bathymetry b;
  b.flat = false;
  b.elevation = [](double x, double y) { return 0.1 * std::sin(2.0 * kPi * x) * std::cos(2.0 * kPi * y); };
  b.d_dx = [](double x, double y) { return 0.2 * kPi * std::cos(2.0 * kPi * x) * std::cos(2.0 * kPi * y); };
  b.d_dy = [](double x, double y) { return -0.2 * kPi * std::sin(2.0 * kPi * x) * std::sin(2.0 * kPi * y); };
  return b;
}

Scenario vortex_scenario() {
  Scenario s;
  s.name = "vortex";
  s.bounds = {0.0, 3.0, 0.0, 3.0};
  s.default_nx = s.default_ny = 50;
  s.final_time = 0.1;
  s.cfl = 0.7;
  s.eps_lim = s.eps_div = 1e-30;
  const double g = s.gravity;
  constexpr double h0 = 1.0, u0 = 2.0, v0 = 3.0, gamma = 0.1, xc = 1.5, yc = 1.5;
  auto state = [g](double x, double y) {
    const double dx = x - xc;
    const double dy = y - yc;
    const double s2 = 1.0 - (dx * dx + dy * dy);
    double dh = 0.0;
    double dr = 0.0;
    if (s2 > 0.0) {
      const double a = std::atan(s2);
      if (a > 1e-2) {
        const double e = std::exp(-1.0 / (a * a * a));
        dh = gamma * e;
        dr = 3.0 * gamma * e / (a * a * a * a * (s2 * s2 + 1.0));
      }
    }
    const double h = h0 - dh;
    const double w = std::sqrt(2.0 * g * dr);
    return ConservedState{h, h * (u0 + w * dy), h * (v0 - w * dx)};
  };
  s.initial = state;
  const Bounds box = s.bounds;
  s.exact = [state, box](double x, double y, double t) {
    return state(wrap_coordinate(x - u0 * t, box.x_min, box.x_max), wrap_coordinate(y - v0 * t, box.y_min, box.y_max));
  };
  return s;
}

Scenario lake_at_rest_scenario() {
  Scenario s;
  s.name = "lake_at_rest";
  s.bounds = {0.0, 1.0, 0.0, 1.0};
  s.default_nx = s.default_ny = 32;
  s.final_time = 1.0;
  s.cfl = 0.9;
  s.eps_lim = s.eps_div = 1e-30;
  s.bathymetry = sinusoidal_bathymetry();
  s.well_balanced = true;
  const Bathymetry b = s.bathymetry;
  s.initial = [b](double x, double y) { return ConservedState{1.0 - b(x, y), 0.0, 0.0}; };
  s.steady = s.initial;
  const PointStateFn init = s.initial;
  s.exact = [init](double x, double y, double) { return init(x, y); };
  return s;
}

Scenario island_scenario(double eta0) {
  if (!(eta0 > 0.0)) throw std::invalid_argument("island_scenario: eta0 must be positive");
  Scenario s;
  s.name = eta0 == 0.7 ? "wet_dry_lake" : (eta0 == 0.999 ? "almost_dry_lake" : "island_lake");
  s.bounds = {-5.0, 5.0, -2.0, 2.0};
  s.default_nx = 100;
  s.default_ny = 40;
  s.final_time = 1.0;
  s.cfl = 0.9;
  s.bathymetry = bump_bathymetry();
  s.well_balanced = true;
  const Bathymetry b = s.bathymetry;
  const double eps = s.eps_lim;
  s.initial = [b, eta0, eps](double x, double y) { return ConservedState{std::max(eta0 - b(x, y), eps), 0.0, 0.0}; };
  s.steady = s.initial;
  const PointStateFn init = s.initial;
  s.exact = [init](double x, double y, double) { return init(x, y); };
  return s;
}

Scenario perturbed_lake_scenario() {
  Scenario s = island_scenario(0.7);
  s.name = "perturbed_lake";
  s.exact = nullptr;
  const PointStateFn lake = s.steady;
  s.initial = [lake](double x, double y) {
    ConservedState u = lake(x, y);
    const double rho2 = 9.0 * ((x + 2.0) * (x + 2.0) + (y - 0.5) * (y - 0.5));
    if (rho2 < 1.0) {
      const double q = 1.0 - rho2;
      u.h += 0.05 * bump_profile(q * q);
    }
    return u;
  };
  return s;
}

Scenario dam_break_scenario(DamBreakKind kind) {
  Scenario s;
  const bool dry = kind == DamBreakKind::Dry;
  s.name = dry ? "dry_dam_break" : "wet_dam_break";
  const double len = dry ? 40.0 : 50.0;
  s.bounds = {0.0, len, 0.0, len};
  s.default_nx = s.default_ny = dry ? 100 : 200;
  s.final_time = dry ? 0.9 : 0.8;
  s.cfl = 1.0;
  const double inner = dry ? 2.5 : 10.0;
  const double outer = dry ? s.eps_lim : 0.5;
  const double c = 0.5 * len;
  s.initial = [inner, outer, c](double x, double y) {
    const double r2 = (x - c) * (x - c) + (y - c) * (y - c);
    return ConservedState{r2 < 49.0 ? inner : outer, 0.0, 0.0};
  };
  return s;
}

Scenario wave_over_island_scenario() {
  Scenario s = island_scenario(0.7);
  s.name = "wave_over_island";
  s.default_nx = 400;
  s.default_ny = 120;
  s.exact = nullptr;
  const Bathymetry b = s.bathymetry;
  const double eps = s.eps_lim;
  s.initial = [b, eps](double x, double y) {
    double h = 0.7 - b(x, y);
    const double rho2 = (x + 2.0) * (x + 2.0);
    if (rho2 < 1.0) {
      const double q = 1.0 - rho2;
      h += 0.5 * bump_profile(q * q);
    }
    if (h <= eps) return ConservedState{eps, 0.0, 0.0};
    return ConservedState{h, h, 0.0};
  };
  return s;
}

const std::vector<std::string>& scenario_names() {
  static const std::vector<std::string> names = {"vortex",         "lake_at_rest",  "wet_dry_lake",
                                                 "almost_dry_lake", "perturbed_lake", "dry_dam_break",
                                                 "wet_dam_break",   "wave_over_island"};
  return names;
}

Scenario make_scenario(const std::string& name) {
  if (name == "vortex") return vortex_scenario();
  if (name == "lake_at_rest") return lake_at_rest_scenario();
  if (name == "wet_dry_lake") return island_scenario(0.7);
  if (name == "almost_dry_lake") return island_scenario(0.999);
  if (name == "perturbed_lake") return perturbed_lake_scenario();
  if (name == "dry_dam_break") return dam_break_scenario(DamBreakKind::Dry);
  if (name == "wet_dam_break") return dam_break_scenario(DamBreakKind::Wet);
  if (name == "wave_over_island") return wave_over_island_scenario();
  throw std::invalid_argument("unknown scenario '" + name + "'");
}

namespace {

StateField floored(StateField f, double eps) {
  for (std::size_t a = 0; a < f.size(); ++a) {
    if (f.h[a] < eps) {
      f.h[a] = eps;
      f.hu[a] = 0.0;
      f.hv[a] = 0.0;
    }
  }
  return f;
}

}  // namespace

StateField initial_field(const Scenario& s, const Grid& grid, int points) {
  return floored(init_cell_averages(grid, s.initial, points), s.eps_lim);
}

StateField steady_field(const Scenario& s, const Grid& grid, int points) {
  if (!s.has_steady()) throw std::invalid_argument("scenario '" + s.name + "' has no steady reference");
  return floored(init_cell_averages(grid, s.steady, points), s.eps_lim);
}

StateField exact_field(const Scenario& s, const Grid& grid, double t, int points) {
  if (!s.has_exact()) throw std::invalid_argument("scenario '" + s.name + "' has no exact solution");
  const ExactFn ex = s.exact;
  return init_cell_averages(grid, [&ex, t](double x, double y) { return ex(x, y, t); }, points);
}

std::vector<double> bathymetry_field(const Scenario& s, const Grid& grid, int points) {
  if (s.bathymetry.flat) return std::vector<double>(grid.cell_count(), 0.0);
  const Bathymetry& b = s.bathymetry;
  return init_cell_averages(grid, [&b](double x, double y) { return b(x, y); }, points);
}

std::array<double, 3> l1_error(const StateField& field, const StateField& exact, const Grid& grid) {
  if (field.size() != exact.size()) throw std::invalid_argument("l1_error: size mismatch");
  std::array<double, 3> err{};
  for (int c = 0; c < 3; ++c) {
    const auto& a = field.component(c);
    const auto& b = exact.component(c);
    double acc = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) acc += std::abs(a[k] - b[k]);
    err[c] = acc * grid.cell_area();
  }
  return err;
}

std::array<double, 3> l1_error(const StateField& field, const Scenario& s, const Grid& grid, double t,
                               int points) {
  return l1_error(field, exact_field(s, grid, t, points), grid);
}

double observed_order(double e1, double e2, double h1, double h2) { return std::log(e1 / e2) / std::log(h1 / h2); }

void ErrorReport::compute_orders() {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t k = 0; k < rows.size(); ++k) {
    for (int c = 0; c < 3; ++c) {
      rows[k].order[c] = nan;
      if (k == 0) continue;
      const double e1 = rows[k - 1].error[c];
      const double e2 = rows[k].error[c];
      if (e1 <= kOrderFloor || e2 <= kOrderFloor) continue;
      rows[k].order[c] = observed_order(e1, e2, 1.0 / rows[k - 1].nx, 1.0 / rows[k].nx);
    }
  }
}

}  // namespace mpdec
