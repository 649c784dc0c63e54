#pragma once

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "mpdec/mesh.hpp"

namespace mpdec {

/// Field state at one time, with the bottom cell averages for the free surface.
struct Snapshot {
  double time = 0.0;
  Grid grid;
  StateField field;
  std::vector<double> bathymetry;

  double eta(std::size_t alpha) const { return field.h[alpha] + bathymetry[alpha]; }
};

/// Legacy ASCII VTK, STRUCTURED_POINTS with one CELL_DATA scalar block per variable (j-major).
void write_vtk(const Snapshot& snap, std::ostream& os);
void write_vtk(const Snapshot& snap, const std::filesystem::path& path);

/// CSV with header x,y,h,hu,hv,b,eta and one row per cell (j-major), 17 significant digits.
void write_csv(const Snapshot& snap, std::ostream& os);
void write_csv(const Snapshot& snap, const std::filesystem::path& path);

struct CsvRow {
  double x = 0.0;
  double y = 0.0;
  double h = 0.0;
  double hu = 0.0;
  double hv = 0.0;
  double b = 0.0;
  double eta = 0.0;
};

/// Reads a file written by write_csv. Throws std::runtime_error naming the path on failure.
std::vector<CsvRow> read_csv(const std::filesystem::path& path);
std::vector<CsvRow> read_csv(std::istream& is);

}  // namespace mpdec
