// mpdec: shallow water runs, convergence tables and WENO coefficient dumps.

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "mpdec/config.hpp"
#include "mpdec/runner.hpp"
#include "mpdec/weno.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

struct ConfigArgs {
  std::string file;
  std::map<std::string, std::string> flags;
  bool diagnostics = false;
  std::string dump_pds;
};

void add_config_options(CLI::App* cmd, ConfigArgs& args) {
  cmd->add_option("--config", args.file, "key = value configuration file");
  for (const std::string& key : mpdec::config_keys()) {
    if (key == "diagnostics" || key == "pds_dump") continue;
    cmd->add_option("--" + key, args.flags[key], "override '" + key + "'");
  }
  cmd->add_flag("--diagnostics", args.diagnostics, "write per-step diagnostics CSV");
  cmd->add_option("--dump-pds", args.dump_pds, "write the initial production/destruction terms to FILE");
}

mpdec::RunConfig load(const ConfigArgs& args, CLI::App* cmd) {
  mpdec::KeyValues entries;
  if (!args.file.empty()) entries = mpdec::read_config_file(args.file);
  mpdec::KeyValues overrides;
  for (const auto& [key, value] : args.flags)
    if (cmd->count("--" + key) > 0) overrides.emplace_back(key, value);
  if (args.diagnostics) overrides.emplace_back("diagnostics", "true");
  if (!args.dump_pds.empty()) overrides.emplace_back("pds_dump", args.dump_pds);
  return mpdec::parse_config(entries, overrides);
}

void print_errors(const std::array<double, 3>& e) {
  std::cout << "l1_error h=" << e[0] << " hu=" << e[1] << " hv=" << e[2] << '\n';
}

int do_run(const ConfigArgs& args, CLI::App* cmd) {
  const mpdec::RunConfig cfg = load(args, cmd);
  const mpdec::RunResult r = mpdec::run(cfg);
  std::cout << std::setprecision(17);
  std::cout << "scenario " << r.scenario.name << " mesh " << r.grid.nx << 'x' << r.grid.ny << " t=" << r.t
            << " steps=" << r.steps << '\n';
  std::cout << "min_h " << r.min_h << '\n';
  std::cout << "volume initial=" << r.initial_volume << " final=" << r.final_volume
            << " relative_change=" << r.relative_volume_change() << '\n';
  if (cfg.integrator == mpdec::Integrator::Mpdec)
    std::cout << "jacobi mean=" << r.stats.jacobi_mean() << " max=" << r.stats.jacobi_max << '\n';
  if (r.error) print_errors(*r.error);
  for (const std::string& f : r.files) std::cout << "wrote " << f << '\n';
  std::cout << "seconds " << r.seconds << '\n';
  return 0;
}

int do_convergence(const ConfigArgs& args, CLI::App* cmd, const std::string& meshes, const std::string& out) {
  const mpdec::RunConfig cfg = load(args, cmd);
  const std::vector<int> list = mpdec::parse_int_list("meshes", meshes);
  const mpdec::ErrorReport report = mpdec::convergence(cfg, list);
  if (out.empty()) {
    mpdec::write_convergence_csv(report, std::cout);
  } else {
    std::ofstream os(out);
    if (!os) throw std::runtime_error("cannot write '" + out + "'");
    mpdec::write_convergence_csv(report, os);
  }
  return 0;
}

int do_tables(int r, int gauss, double eps, const std::string& out) {
  const mpdec::ReconstructionTables t = mpdec::generate_tables(r, gauss, eps);
  if (out.empty()) {
    mpdec::write_tables_csv(t, std::cout);
  } else {
    std::ofstream os(out);
    if (!os) throw std::runtime_error("cannot write '" + out + "'");
    mpdec::write_tables_csv(t, os);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"High-order positivity preserving shallow water solver"};
  app.require_subcommand(1);

  ConfigArgs run_args;
  CLI::App* run_cmd = app.add_subcommand("run", "run one scenario");
  add_config_options(run_cmd, run_args);

  ConfigArgs conv_args;
  std::string meshes = "25,50,100";
  std::string conv_out;
  CLI::App* conv_cmd = app.add_subcommand("convergence", "error table over a list of meshes");
  add_config_options(conv_cmd, conv_args);
  conv_cmd->add_option("--meshes", meshes, "comma separated nx values");
  conv_cmd->add_option("--out", conv_out, "CSV file (default stdout)");

  int radius = 3;
  int gauss = 4;
  double eps = 1e-6;
  std::string tables_out;
  CLI::App* tables_cmd = app.add_subcommand("weno-tables", "dump reconstruction coefficients");
  tables_cmd->add_option("--r", radius, "stencil radius (order 2r-1)");
  tables_cmd->add_option("--gauss", gauss, "Gauss points per face");
  tables_cmd->add_option("--eps", eps, "smoothness epsilon");
  tables_cmd->add_option("--out", tables_out, "CSV file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*run_cmd) return do_run(run_args, run_cmd);
    if (*conv_cmd) return do_convergence(conv_args, conv_cmd, meshes, conv_out);
    if (*tables_cmd) return do_tables(radius, gauss, eps, tables_out);
  } catch (const mpdec::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const mpdec::NumericalFailure& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const mpdec::SolverError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
