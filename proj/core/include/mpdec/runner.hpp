#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "mpdec/cases.hpp"
#include "mpdec/config.hpp"
#include "mpdec/spatial_operator.hpp"
#include "mpdec/timeint.hpp"

namespace mpdec {

/// NaN/Inf in the solution or a failed linear solve.
class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct StepRecord {
  int step = 0;
  double t = 0.0;
  double dt = 0.0;
  double jacobi_mean = 0.0;
  int jacobi_max = 0;
  double min_h = 0.0;
};

struct RunResult {
  Scenario scenario;
  Grid grid;
  StateField initial;
  StateField final_state;
  double t = 0.0;
  int steps = 0;
  StepStats stats;
  double min_h = 0.0;  // over all cells and all steps, including the initial state
  double initial_volume = 0.0;
  double final_volume = 0.0;
  std::optional<std::array<double, 3>> error;
  double seconds = 0.0;
  std::vector<StepRecord> history;
  std::vector<std::string> files;

  double relative_volume_change() const;
};

/// Scenario with the config overrides (cfl, final time, tolerances, gravity, well-balancing) applied.
Scenario configured_scenario(const RunConfig& config);
/// Mesh size after defaults: ny = round(nx * aspect) when unset.
std::pair<int, int> resolve_mesh(const RunConfig& config, const Scenario& scenario);

/// Builds the semidiscretization for a config, with the well-balanced reference if enabled.
SpatialOperator build_operator(const RunConfig& config, const Scenario& scenario, const Grid& grid);

/// Time loop; writes snapshots, diagnostics and the PDS dump requested by the config.
RunResult run(const RunConfig& config);

/// Runs the config on each mesh (nx values; ny scaled by the aspect ratio) and tabulates errors.
ErrorReport convergence(const RunConfig& config, std::span<const int> meshes);

/// CSV with columns nx,ny,error_h,order_h,error_hu,order_hu,error_hv,order_hv.
void write_convergence_csv(const ErrorReport& report, std::ostream& os);

}  // namespace mpdec
