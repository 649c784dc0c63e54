#include "mpdec/output.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <string>

namespace mpdec {
namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write '" + path.string() + "'");
  return os;
}

void finish(std::ofstream& os, const std::filesystem::path& path) {
  os.flush();
  if (!os) throw std::runtime_error("write failed for '" + path.string() + "'");
}

}  // namespace

void write_vtk(const Snapshot& snap, std::ostream& os) {
  const Grid& g = snap.grid;
  const std::size_t n = g.cell_count();
  os << std::setprecision(17);
  os << "# vtk DataFile Version 3.0\n";
  os << "shallow water snapshot t=" << snap.time << "\n";
  os << "ASCII\n";
  os << "DATASET STRUCTURED_POINTS\n";
  os << "DIMENSIONS " << g.nx + 1 << ' ' << g.ny + 1 << " 1\n";
  os << "ORIGIN " << g.bounds.x_min << ' ' << g.bounds.y_min << " 0\n";
  os << "SPACING " << g.dx << ' ' << g.dy << " 1\n";
  os << "CELL_DATA " << n << '\n';
  auto block = [&](const char* name, auto value) {
    os << "SCALARS " << name << " double 1\n";
    os << "LOOKUP_TABLE default\n";
    for (std::size_t a = 0; a < n; ++a) os << value(a) << '\n';
  };
  block("h", [&](std::size_t a) { return snap.field.h[a]; });
  block("hu", [&](std::size_t a) { return snap.field.hu[a]; });
  block("hv", [&](std::size_t a) { return snap.field.hv[a]; });
  block("b", [&](std::size_t a) { return snap.bathymetry[a]; });
  block("eta", [&](std::size_t a) { return snap.eta(a); });
}

void write_vtk(const Snapshot& snap, const std::filesystem::path& path) {
  std::ofstream os = open_out(path);
  write_vtk(snap, os);
  finish(os, path);
}

void write_csv(const Snapshot& snap, std::ostream& os) {
  const Grid& g = snap.grid;
  os << std::setprecision(17);
  os << "x,y,h,hu,hv,b,eta\n";
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      const std::size_t a = g.index(i, j);
      os << g.x_center(i) << ',' << g.y_center(j) << ',' << snap.field.h[a] << ',' << snap.field.hu[a] << ','
         << snap.field.hv[a] << ',' << snap.bathymetry[a] << ',' << snap.eta(a) << '\n';
    }
  }
}

void write_csv(const Snapshot& snap, const std::filesystem::path& path) {
  std::ofstream os = open_out(path);
  write_csv(snap, os);
  finish(os, path);
}

std::vector<CsvRow> read_csv(std::istream& is) {
  std::vector<CsvRow> rows;
  std::string line;
  if (!std::getline(is, line) || line.rfind("x,y,h,hu,hv,b,eta", 0) != 0)
    throw std::runtime_error("snapshot csv: missing header");
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string cell;
    double v[7];
    for (double& x : v) {
      if (!std::getline(ls, cell, ',')) throw std::runtime_error("snapshot csv: short row '" + line + "'");
      x = std::stod(cell);
    }
    rows.push_back({v[0], v[1], v[2], v[3], v[4], v[5], v[6]});
  }
  return rows;
}

std::vector<CsvRow> read_csv(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot read '" + path.string() + "'");
  try {
    return read_csv(is);
  } catch (const std::exception& e) {
    throw std::runtime_error(path.string() + ": " + e.what());
  }
}

}  // namespace mpdec
