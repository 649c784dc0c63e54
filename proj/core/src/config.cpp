#include "mpdec/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "mpdec/cases.hpp"
#include "mpdec/weno.hpp"

namespace mpdec {
namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

double to_double(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const double d = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ConfigError(key, "expected a number, got '" + v + "'");
  }
}

int to_int(std::string_view key, std::string_view v) {
  int out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size())
    throw ConfigError(std::string(key), "expected an integer, got '" + std::string(v) + "'");
  return out;
}

bool to_bool(const std::string& key, std::string v) {
  std::transform(v.begin(), v.end(), v.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ConfigError(key, "expected a boolean, got '" + v + "'");
}

std::vector<double> to_double_list(const std::string& key, const std::string& v) {
  std::vector<double> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(to_double(key, item));
  }
  return out;
}

void require(bool ok, const std::string& key, const std::string& what) {
  if (!ok) throw ConfigError(key, what);
}

void apply(RunConfig& c, const std::string& key, const std::string& v) {
  if (key == "scenario") {
    c.scenario = v;
  } else if (key == "nx") {
    c.nx = to_int(key, v);
  } else if (key == "ny") {
    c.ny = to_int(key, v);
  } else if (key == "cfl") {
    c.cfl = to_double(key, v);
  } else if (key == "final_time") {
    c.final_time = to_double(key, v);
  } else if (key == "integrator") {
    if (v == "mpdec") c.integrator = Integrator::Mpdec;
    else if (v == "dec") c.integrator = Integrator::Dec;
    else throw ConfigError(key, "expected mpdec or dec, got '" + v + "'");
  } else if (key == "subtimesteps") {
    c.subtimesteps = to_int(key, v);
  } else if (key == "corrections") {
    c.corrections = to_int(key, v);
  } else if (key == "node_family") {
    if (v == "gauss_lobatto") c.node_family = NodeFamily::GaussLobatto;
    else if (v == "equispaced") c.node_family = NodeFamily::Equispaced;
    else throw ConfigError(key, "expected gauss_lobatto or equispaced, got '" + v + "'");
  } else if (key == "well_balanced") {
    c.well_balanced = to_bool(key, v);
  } else if (key == "eps_lim") {
    c.eps_lim = to_double(key, v);
  } else if (key == "eps_div") {
    c.eps_div = to_double(key, v);
  } else if (key == "eps_weno") {
    c.eps_weno = to_double(key, v);
  } else if (key == "gravity") {
    c.gravity = to_double(key, v);
  } else if (key == "gauss_points") {
    c.gauss_points = to_int(key, v);
  } else if (key == "weno_r") {
    c.weno_r = to_int(key, v);
  } else if (key == "output_dir") {
    c.output_dir = v;
  } else if (key == "output_format") {
    require(v == "vtk" || v == "csv" || v == "both", key, "expected vtk, csv or both, got '" + v + "'");
    c.output_format = v;
  } else if (key == "snapshot_times") {
    c.snapshot_times = to_double_list(key, v);
  } else if (key == "diagnostics") {
    c.diagnostics = to_bool(key, v);
  } else if (key == "jacobi_tol") {
    c.jacobi_tol = to_double(key, v);
  } else if (key == "jacobi_max_iter") {
    c.jacobi_max_iter = to_int(key, v);
  } else if (key == "pds_dump") {
    c.pds_dump = v;
  } else {
    throw ConfigError(key, "unknown key");
  }
}

void validate(const RunConfig& c) {
  require(!c.scenario.empty(), "scenario", "required");
  const auto& names = scenario_names();
  require(std::find(names.begin(), names.end(), c.scenario) != names.end(), "scenario",
          "unknown scenario '" + c.scenario + "'");
  require(c.nx >= 0, "nx", "must be positive");
  require(c.ny >= 0, "ny", "must be positive");
  require(!c.cfl || *c.cfl > 0.0, "cfl", "must be positive");
  require(!c.final_time || *c.final_time > 0.0, "final_time", "must be positive");
  require(c.subtimesteps >= 1, "subtimesteps", "must be at least 1");
  require(c.corrections >= 1, "corrections", "must be at least 1");
  require(!c.eps_lim || *c.eps_lim > 0.0, "eps_lim", "must be positive");
  require(!c.eps_div || *c.eps_div > 0.0, "eps_div", "must be positive");
  require(!c.eps_weno || *c.eps_weno > 0.0, "eps_weno", "must be positive");
  require(!c.gravity || *c.gravity > 0.0, "gravity", "must be positive");
  require(c.gauss_points >= 1, "gauss_points", "must be at least 1");
  require(c.weno_r >= 1 && c.weno_r <= kMaxWenoRadius, "weno_r", "out of range");
  require(c.jacobi_tol > 0.0, "jacobi_tol", "must be positive");
  require(c.jacobi_max_iter >= 1, "jacobi_max_iter", "must be at least 1");
  for (double t : c.snapshot_times) require(t >= 0.0, "snapshot_times", "times must be non-negative");
}

}  // namespace

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = {
      "scenario",     "nx",          "ny",          "cfl",           "final_time",     "integrator",
      "subtimesteps", "corrections", "node_family", "well_balanced", "eps_lim",        "eps_div",
      "eps_weno",     "gravity",     "gauss_points", "weno_r",       "output_dir",     "output_format",
      "snapshot_times", "diagnostics", "jacobi_tol", "jacobi_max_iter", "pds_dump"};
  return keys;
}

KeyValues read_config_text(std::string_view text) {
  KeyValues out;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string t = trim(line);
    if (t.empty()) continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(lineno), "expected 'key = value'");
    std::string key = trim(std::string_view(t).substr(0, eq));
    if (key.empty()) throw ConfigError("line " + std::to_string(lineno), "missing key");
    out.emplace_back(std::move(key), trim(std::string_view(t).substr(eq + 1)));
  }
  return out;
}

KeyValues read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return read_config_text(ss.str());
}

RunConfig parse_config(const KeyValues& entries, const KeyValues& overrides) {
  RunConfig c;
  for (const auto& [k, v] : entries) apply(c, k, v);
  for (const auto& [k, v] : overrides) apply(c, k, v);
  validate(c);
  return c;
}

std::vector<int> parse_int_list(std::string_view key, std::string_view text) {
  std::vector<int> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = std::min(text.find(',', start), text.size());
    const std::string item = trim(text.substr(start, comma - start));
    if (item.empty()) throw ConfigError(std::string(key), "empty list item");
    const int v = to_int(key, item);
    if (v <= 0) throw ConfigError(std::string(key), "values must be positive");
    out.push_back(v);
    start = comma + 1;
  }
  return out;
}

}  // namespace mpdec
