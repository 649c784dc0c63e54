#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mpdec/timeint.hpp"

namespace mpdec {

enum class Integrator { Mpdec, Dec };

/// Everything a run needs; unset optionals fall back to scenario defaults.
struct RunConfig {
  std::string scenario;
  int nx = 0;  // 0: scenario default
  int ny = 0;  // 0: nx scaled by the scenario aspect ratio
  std::optional<double> cfl;
  std::optional<double> final_time;
  Integrator integrator = Integrator::Mpdec;
  int subtimesteps = 3;
  int corrections = 5;
  NodeFamily node_family = NodeFamily::GaussLobatto;
  std::optional<bool> well_balanced;
  std::optional<double> eps_lim;
  std::optional<double> eps_div;
  std::optional<double> eps_weno;
  std::optional<double> gravity;
  int gauss_points = 4;
  int weno_r = 3;
  std::string output_dir;
  std::string output_format = "both";  // vtk, csv or both
  std::vector<double> snapshot_times;
  bool diagnostics = false;
  double jacobi_tol = kDefaultJacobiRelTol;  // relative to ||rhs||_inf
  int jacobi_max_iter = kDefaultJacobiMaxIter;
  std::string pds_dump;  // file for the initial production-destruction system
};

/// Invalid configuration; key() names the offending entry.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& message)
      : std::runtime_error(key + ": " + message), key_(std::move(key)) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

using KeyValues = std::vector<std::pair<std::string, std::string>>;

/// Parses `key = value` lines; '#' starts a comment, blank lines are skipped.
KeyValues read_config_text(std::string_view text);
KeyValues read_config_file(const std::string& path);

/// Applies file entries, then overrides, and validates the result.
RunConfig parse_config(const KeyValues& entries, const KeyValues& overrides = {});

/// Keys understood by parse_config.
const std::vector<std::string>& config_keys();

/// Comma-separated list of positive integers, e.g. "25,50,100".
std::vector<int> parse_int_list(std::string_view key, std::string_view text);

}  // namespace mpdec
