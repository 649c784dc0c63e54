#include <benchmark/benchmark.h>

#include "mpdec/cases.hpp"
#include "mpdec/spatial_operator.hpp"
#include "mpdec/timeint.hpp"

using namespace mpdec;

namespace {

struct VortexSetup {
  Scenario scenario = vortex_scenario();
  Grid grid;
  SpatialOperator op;
  StateField u;

  explicit VortexSetup(int n)
      : grid(build_grid(scenario.bounds, n, n)),
        op(grid, generate_tables(3, 4, scenario.eps_weno), scenario.bathymetry,
           OperatorOptions{{scenario.gravity, scenario.eps_div}, scenario.eps_lim}),
        u(initial_field(scenario, grid)) {}
};

void BM_Reconstruction(benchmark::State& state) {
  VortexSetup s(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(reconstruct_all_faces(s.u, s.grid, s.op.tables()));
  state.SetItemsProcessed(state.iterations() * s.grid.cell_count());
}
BENCHMARK(BM_Reconstruction)->Arg(50)->Arg(100);

void BM_OperatorEvaluation(benchmark::State& state) {
  VortexSetup s(static_cast<int>(state.range(0)));
  PdsSystem pds = PdsSystem::for_grid(s.grid);
  for (auto _ : state) {
    s.op.evaluate(s.u, pds);
    benchmark::DoNotOptimize(pds.production.data());
  }
  state.SetItemsProcessed(state.iterations() * s.grid.cell_count());
}
BENCHMARK(BM_OperatorEvaluation)->Arg(50)->Arg(100);

void BM_JacobiSolve(benchmark::State& state) {
  VortexSetup s(static_cast<int>(state.range(0)));
  PdsSystem pds = PdsSystem::for_grid(s.grid);
  s.op.evaluate(s.u, pds);
  const double dt = compute_dt(s.u, s.grid, 0.7, {s.scenario.gravity, s.scenario.eps_div}, 0.0, 1.0);
  const PatankarMass mass = assemble_mass(pds, s.u.h, 0.5, dt, s.scenario.eps_div);
  for (auto _ : state) benchmark::DoNotOptimize(jacobi_solve(mass, s.u.h));
}
BENCHMARK(BM_JacobiSolve)->Arg(50)->Arg(100);

void BM_MpdecStep(benchmark::State& state) {
  VortexSetup s(static_cast<int>(state.range(0)));
  const DecTables tab = build_dec_tables(3);
  const PdsFn f = [&](const StateField& u, PdsSystem& p) {
    if (p.rows != s.grid.cell_count()) p = PdsSystem::for_grid(s.grid);
    s.op.evaluate(u, p);
  };
  const double dt = compute_dt(s.u, s.grid, 0.7, {s.scenario.gravity, s.scenario.eps_div}, 0.0, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(mpdec_step(s.u, dt, f, tab, 5));
}
BENCHMARK(BM_MpdecStep)->Arg(25)->Arg(50)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
