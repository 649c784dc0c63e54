#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <sstream>

#include "mpdec/config.hpp"
#include "mpdec/output.hpp"
#include "mpdec/runner.hpp"

using namespace mpdec;
namespace fs = std::filesystem;

namespace {

std::string error_key(const KeyValues& kv) {
  try {
    parse_config(kv);
  } catch (const ConfigError& e) {
    return e.key();
  }
  return "";
}

}  // namespace

TEST(Config, ParsesFileTextAndOverrides) {
  const KeyValues kv = read_config_text(
      "# vortex refinement\n"
      "scenario = vortex\n"
      "nx = 50   # cells\n"
      "\n"
      "cfl=0.7\n"
      "integrator = dec\n"
      "node_family = equispaced\n"
      "snapshot_times = 0, 0.05, 0.1\n");
  ASSERT_EQ(kv.size(), 6u);
  const RunConfig c = parse_config(kv, {{"nx", "25"}, {"well_balanced", "false"}});
  EXPECT_EQ(c.scenario, "vortex");
  EXPECT_EQ(c.nx, 25);
  EXPECT_EQ(*c.cfl, 0.7);
  EXPECT_EQ(c.integrator, Integrator::Dec);
  EXPECT_EQ(c.node_family, NodeFamily::Equispaced);
  EXPECT_EQ(c.snapshot_times, (std::vector<double>{0.0, 0.05, 0.1}));
  EXPECT_FALSE(*c.well_balanced);
  EXPECT_FALSE(c.final_time.has_value());
  EXPECT_EQ(c.subtimesteps, 3);
  EXPECT_EQ(c.corrections, 5);
}

TEST(Config, ErrorsNameTheKey) {
  EXPECT_EQ(error_key({}), "scenario");
  EXPECT_EQ(error_key({{"scenario", "tsunami"}}), "scenario");
  EXPECT_EQ(error_key({{"scenario", "vortex"}, {"cfl", "-1"}}), "cfl");
  EXPECT_EQ(error_key({{"scenario", "vortex"}, {"cfl", "fast"}}), "cfl");
  EXPECT_EQ(error_key({{"scenario", "vortex"}, {"resolution", "3"}}), "resolution");
  EXPECT_EQ(error_key({{"scenario", "vortex"}, {"integrator", "rk4"}}), "integrator");
  EXPECT_EQ(error_key({{"scenario", "vortex"}, {"nx", "12.5"}}), "nx");
  EXPECT_EQ(error_key({{"scenario", "vortex"}, {"corrections", "0"}}), "corrections");
  try {
    parse_config({{"scenario", "vortex"}, {"cfl", "-1"}});
  } catch (const ConfigError& e) {
    EXPECT_EQ(std::string(e.what()).rfind("cfl: ", 0), 0u);
  }
}

TEST(Config, RejectsMalformedLines) { EXPECT_THROW(read_config_text("scenario vortex\n"), ConfigError); }

TEST(Config, IntList) {
  EXPECT_EQ(parse_int_list("meshes", "25,50, 100"), (std::vector<int>{25, 50, 100}));
  EXPECT_THROW(parse_int_list("meshes", "25,,50"), ConfigError);
  EXPECT_THROW(parse_int_list("meshes", "-4"), ConfigError);
  EXPECT_THROW(parse_int_list("meshes", ""), ConfigError);
}

TEST(Config, KeysAreUnique) {
  auto keys = config_keys();
  std::sort(keys.begin(), keys.end());
  EXPECT_EQ(std::adjacent_find(keys.begin(), keys.end()), keys.end());
}

TEST(Output, VtkSingleCell) {
  Snapshot s;
  s.grid = build_grid({0, 2, 1, 2}, 1, 1);
  s.field = StateField(1);
  s.field.set(0, {0.5, 0.25, -0.125});
  s.bathymetry = {0.5};
  std::ostringstream os;
  write_vtk(s, os);
  const std::string v = os.str();
  EXPECT_EQ(v.rfind("# vtk DataFile Version", 0), 0u);
  EXPECT_NE(v.find("DATASET STRUCTURED_POINTS"), std::string::npos);
  EXPECT_NE(v.find("DIMENSIONS 2 2 1"), std::string::npos);
  EXPECT_NE(v.find("ORIGIN 0 1 0"), std::string::npos);
  EXPECT_NE(v.find("SPACING 2 1 1"), std::string::npos);
  EXPECT_NE(v.find("CELL_DATA 1"), std::string::npos);
  for (const char* name : {"h", "hu", "hv", "b", "eta"})
    EXPECT_NE(v.find(std::string("SCALARS ") + name + " double"), std::string::npos) << name;
  EXPECT_NE(v.find("\n-0.125\n"), std::string::npos);
}

TEST(Output, CsvRoundTripIsExact) {
  Snapshot s;
  s.grid = build_grid({0, 1, 0, 1}, 3, 2);
  s.field = StateField(6);
  s.bathymetry.assign(6, 0.0);
  for (std::size_t a = 0; a < 6; ++a) {
    s.field.set(a, {1.0 / (a + 3.0), std::sqrt(2.0) * a, -1e-300 * a});
    s.bathymetry[a] = std::exp(-double(a));
  }
  std::stringstream ss;
  write_csv(s, ss);
  const std::vector<CsvRow> rows = read_csv(ss);
  ASSERT_EQ(rows.size(), 6u);
  for (std::size_t a = 0; a < 6; ++a) {
    EXPECT_EQ(rows[a].x, s.grid.x_center(s.grid.column(a)));
    EXPECT_EQ(rows[a].y, s.grid.y_center(s.grid.row(a)));
    EXPECT_EQ(rows[a].h, s.field.h[a]);
    EXPECT_EQ(rows[a].hu, s.field.hu[a]);
    EXPECT_EQ(rows[a].hv, s.field.hv[a]);
    EXPECT_EQ(rows[a].b, s.bathymetry[a]);
    EXPECT_EQ(rows[a].eta, s.eta(a));
  }
}

TEST(Runner, DeterministicAndConservative) {
  const RunConfig c = parse_config({{"scenario", "vortex"}, {"nx", "12"}, {"final_time", "0.02"}});
  const RunResult a = run(c);
  const RunResult b = run(c);
  EXPECT_EQ(a.final_state.h, b.final_state.h);
  EXPECT_EQ(a.final_state.hv, b.final_state.hv);
  EXPECT_EQ(a.t, 0.02);
  EXPECT_EQ(a.grid.ny, 12);
  EXPECT_LE(std::abs(a.relative_volume_change()), 1e-13);
  ASSERT_TRUE(a.error.has_value());
  EXPECT_GT((*a.error)[0], 0.0);
  EXPECT_EQ(a.history.size(), static_cast<std::size_t>(a.steps));
  EXPECT_GT(a.min_h, 0.0);
}

TEST(Runner, SnapshotsHitRequestedTimes) {
  const fs::path dir = fs::temp_directory_path() / "mpdec_runner_test";
  fs::remove_all(dir);
  const RunConfig c = parse_config({{"scenario", "lake_at_rest"},
                                    {"nx", "6"},
                                    {"final_time", "0.03"},
                                    {"snapshot_times", "0.01,0.03"},
                                    {"output_format", "csv"},
                                    {"output_dir", dir.string()}});
  const RunResult r = run(c);
  EXPECT_TRUE(fs::exists(dir / "lake_at_rest_t0.010000.csv"));
  EXPECT_TRUE(fs::exists(dir / "lake_at_rest_t0.030000.csv"));
  EXPECT_FALSE(fs::exists(dir / "lake_at_rest_t0.010000.vtk"));
  bool hit = false;
  for (const StepRecord& s : r.history) hit = hit || s.t == 0.01;
  EXPECT_TRUE(hit);
  fs::remove_all(dir);
}

TEST(Runner, WellBalancingNeedsSteadyState) {
  const RunConfig c = parse_config({{"scenario", "vortex"}, {"well_balanced", "true"}});
  EXPECT_THROW(configured_scenario(c), ConfigError);
}

TEST(Runner, ConvergenceCsvMarksMissingOrders) {
  ErrorReport rep;
  rep.rows = {{8, 8, {1e-2, 1e-3, 0.0}}, {16, 16, {1e-3, 1e-4, 0.0}}};
  rep.compute_orders();
  std::ostringstream os;
  write_convergence_csv(rep, os);
  std::istringstream is(os.str());
  std::string header, first, second;
  std::getline(is, header);
  std::getline(is, first);
  std::getline(is, second);
  EXPECT_EQ(header, "nx,ny,error_h,order_h,error_hu,order_hu,error_hv,order_hv");
  EXPECT_NE(first.find("n/a"), std::string::npos);
  EXPECT_EQ(second.substr(second.size() - 5), "0,n/a");
}
