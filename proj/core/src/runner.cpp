#include "mpdec/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "mpdec/output.hpp"

namespace mpdec {
namespace {

void check_finite(const StateField& f, int step) {
  for (std::size_t a = 0; a < f.size(); ++a) {
    if (!std::isfinite(f.h[a]) || !std::isfinite(f.hu[a]) || !std::isfinite(f.hv[a])) {
      std::ostringstream msg;
      msg << "non-finite value at step " << step << ", cell " << a;
      throw NumericalFailure(msg.str());
    }
  }
}

double min_of(const std::vector<double>& v) { return v.empty() ? 0.0 : *std::min_element(v.begin(), v.end()); }

std::string time_tag(double t) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(6) << t;
  return os.str();
}

}  // namespace

double RunResult::relative_volume_change() const {
  return std::abs(final_volume - initial_volume) / std::abs(initial_volume);
}

Scenario configured_scenario(const RunConfig& config) {
  Scenario s = make_scenario(config.scenario);
  if (config.cfl) s.cfl = *config.cfl;
  if (config.final_time) s.final_time = *config.final_time;
  if (config.eps_lim) s.eps_lim = *config.eps_lim;
  if (config.eps_div) s.eps_div = *config.eps_div;
  if (config.eps_weno) s.eps_weno = *config.eps_weno;
  if (config.gravity) s.gravity = *config.gravity;
  if (config.well_balanced) s.well_balanced = *config.well_balanced;
  if (s.well_balanced && !s.has_steady())
    throw ConfigError("well_balanced", "scenario '" + s.name + "' has no steady state to balance");
  return s;
}

std::pair<int, int> resolve_mesh(const RunConfig& config, const Scenario& scenario) {
  if (config.nx <= 0) return {scenario.default_nx, config.ny > 0 ? config.ny : scenario.default_ny};
  const int ny = config.ny > 0 ? config.ny : std::max(1, static_cast<int>(std::lround(config.nx * scenario.aspect())));
  return {config.nx, ny};
}

SpatialOperator build_operator(const RunConfig& config, const Scenario& scenario, const Grid& grid) {
  ReconstructionTables tables = generate_tables(config.weno_r, config.gauss_points, scenario.eps_weno);
  OperatorOptions opts;
  opts.physics.gravity = scenario.gravity;
  opts.physics.eps_div = scenario.eps_div;
  opts.eps_lim = scenario.eps_lim;
  SpatialOperator op(grid, std::move(tables), scenario.bathymetry, opts);
  if (scenario.well_balanced) op.set_reference(precompute_reference(op, steady_field(scenario, grid)));
  return op;
}

RunResult run(const RunConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  RunResult res;
  res.scenario = configured_scenario(config);
  const Scenario& sc = res.scenario;
  const auto [nx, ny] = resolve_mesh(config, sc);
  res.grid = build_grid(sc.bounds, nx, ny);
  const Grid& grid = res.grid;

  const SpatialOperator op = build_operator(config, sc, grid);
  const DecTables tables = build_dec_tables(config.subtimesteps, config.node_family);
  MpdecOptions mopts;
  mopts.eps_div = sc.eps_div;
  mopts.jacobi_rel_tol = config.jacobi_tol;
  mopts.jacobi_max_iter = config.jacobi_max_iter;
  mopts.dry_floor = sc.eps_lim;

  res.initial = initial_field(sc, grid);
  StateField u = res.initial;
  check_finite(u, 0);
  res.initial_volume = total_volume(grid, u);
  res.min_h = min_of(u.h);

  const std::filesystem::path outdir = config.output_dir.empty() ? std::filesystem::path(".") : std::filesystem::path(config.output_dir);
  const bool want_output = !config.output_dir.empty();
  if (want_output || config.diagnostics) std::filesystem::create_directories(outdir);

  if (!config.pds_dump.empty()) {
    PdsSystem pds = PdsSystem::for_grid(grid);
    op.evaluate(u, pds);
    std::ofstream os(config.pds_dump);
    if (!os) throw std::runtime_error("cannot write '" + config.pds_dump + "'");
    write_pds_coordinates(pds, os);
    res.files.push_back(config.pds_dump);
  }

  std::vector<double> snaps;
  if (want_output) {
    snaps = config.snapshot_times;
    if (snaps.empty()) snaps.push_back(sc.final_time);
    std::sort(snaps.begin(), snaps.end());
    snaps.erase(std::unique(snaps.begin(), snaps.end()), snaps.end());
    snaps.erase(std::remove_if(snaps.begin(), snaps.end(), [&](double t) { return t > sc.final_time; }), snaps.end());
  }
  const std::vector<double> bottom = want_output ? bathymetry_field(sc, grid) : std::vector<double>{};
  auto write_snapshot = [&](double t) {
    Snapshot snap{t, grid, u, bottom};
    const std::string stem = sc.name + "_t" + time_tag(t);
    if (config.output_format != "csv") {
      write_vtk(snap, outdir / (stem + ".vtk"));
      res.files.push_back((outdir / (stem + ".vtk")).string());
    }
    if (config.output_format != "vtk") {
      write_csv(snap, outdir / (stem + ".csv"));
      res.files.push_back((outdir / (stem + ".csv")).string());
    }
  };
  std::size_t next_snap = 0;
  while (next_snap < snaps.size() && snaps[next_snap] <= 0.0) write_snapshot(snaps[next_snap++]);

  PhysicsParams physics;
  physics.gravity = sc.gravity;
  physics.eps_div = sc.eps_div;
  const PdsFn pds_fn = [&op](const StateField& f, PdsSystem& out) { op.evaluate(f, out); };
  const RhsFn rhs_fn = [&op](const StateField& f, StateField& out) { op.derivative(f, out); };

  double t = 0.0;
  const double T = sc.final_time;
  while (t < T) {
    double target = T;
    if (next_snap < snaps.size()) target = std::min(target, snaps[next_snap]);
    double dt = compute_dt(u, grid, sc.cfl, physics, t, target);
    if (!(dt > 0.0)) break;
    StepStats step_stats;
    try {
      if (config.integrator == Integrator::Mpdec)
        u = mpdec_step(u, dt, pds_fn, tables, config.corrections, mopts, &step_stats);
      else
        u = dec_step(u, dt, rhs_fn, tables, config.corrections, &step_stats);
    } catch (const SolverError& e) {
      std::ostringstream msg;
      msg << "step " << res.steps + 1 << " at t=" << t << ": " << e.what();
      throw NumericalFailure(msg.str());
    }
    ++res.steps;
    t = (dt == target - t) ? target : t + dt;
    check_finite(u, res.steps);
    res.stats += step_stats;
    const double mh = min_of(u.h);
    res.min_h = std::min(res.min_h, mh);
    res.history.push_back({res.steps, t, dt, step_stats.jacobi_mean(), step_stats.jacobi_max, mh});
    while (next_snap < snaps.size() && snaps[next_snap] <= t) write_snapshot(snaps[next_snap++]);
  }
  res.t = t;
  res.final_state = u;
  res.final_volume = total_volume(grid, u);
  if (sc.has_exact()) res.error = l1_error(u, sc, grid, t);

  if (config.diagnostics) {
    const std::filesystem::path path = outdir / (sc.name + "_diagnostics.csv");
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot write '" + path.string() + "'");
    os << std::setprecision(17) << "step,t,dt,jacobi_mean,jacobi_max,min_h\n";
    for (const StepRecord& r : res.history)
      os << r.step << ',' << r.t << ',' << r.dt << ',' << r.jacobi_mean << ',' << r.jacobi_max << ',' << r.min_h
         << '\n';
    res.files.push_back(path.string());
  }
  res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return res;
}

ErrorReport convergence(const RunConfig& config, std::span<const int> meshes) {
  const Scenario sc = configured_scenario(config);
  if (!sc.has_exact()) throw ConfigError("scenario", "'" + sc.name + "' has no exact solution");
  ErrorReport report;
  for (int n : meshes) {
    RunConfig c = config;
    c.nx = n;
    c.ny = 0;
    const RunResult r = run(c);
    ErrorRow row;
    row.nx = r.grid.nx;
    row.ny = r.grid.ny;
    row.error = *r.error;
    row.seconds = r.seconds;
    row.jacobi_mean = r.stats.jacobi_mean();
    row.jacobi_max = r.stats.jacobi_max;
    report.rows.push_back(row);
  }
  report.compute_orders();
  return report;
}

void write_convergence_csv(const ErrorReport& report, std::ostream& os) {
  os << std::setprecision(17);
  os << "nx,ny,error_h,order_h,error_hu,order_hu,error_hv,order_hv\n";
  for (const ErrorRow& r : report.rows) {
    os << r.nx << ',' << r.ny;
    for (int c = 0; c < 3; ++c) {
      os << ',' << r.error[c] << ',';
      if (std::isnan(r.order[c])) os << "n/a";
      else os << r.order[c];
    }
    os << '\n';
  }
}

}  // namespace mpdec
