#pragma once

#include <array>
#include <string>
#include <vector>

#include "rfem/config.hpp"
#include "rfem/receiver.hpp"

namespace rfem {

/// Shortest decimal form that reads back to the same double.
std::string format_double(double value);

/// `node_id,r,z,T` header, one row per node, LF endings.
void write_csv(const TemperatureField& field, const std::string& path);

/// Legacy ASCII unstructured grid: points (r, z, 0), triangle cells (type 5),
/// point scalar `temperature`.
void write_vtk(const TemperatureField& field, const std::string& path);

/// Plain P2 grayscale, one pixel per grid cell, [min T, max T] -> [0, 255],
/// cells outside the domain written as 0, highest z in the first row.
/// Requires a mesh with grid lines.
void write_pgm(const TemperatureField& field, const std::string& path);

void export_field(const TemperatureField& field, OutputFormat format, const std::string& path);

struct FieldFile {
  std::vector<Node> nodes;
  std::vector<std::array<NodeId, 3>> cells;
  std::vector<double> temperature;
};

FieldFile read_csv(const std::string& path);
FieldFile read_vtk(const std::string& path);

struct PgmImage {
  int width = 0;
  int height = 0;
  int max_value = 0;
  std::vector<int> pixels;  // row-major, first row on top
};

PgmImage read_pgm(const std::string& path);

}  // namespace rfem
