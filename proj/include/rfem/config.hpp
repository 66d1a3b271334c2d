#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "rfem/receiver.hpp"

namespace rfem {

enum class OutputFormat { Csv, Vtk, Pgm };

const char* extension(OutputFormat format) noexcept;

/// Comma-separated list such as "csv,vtk". Throws Error(Configuration).
std::vector<OutputFormat> parse_formats(std::string_view list);

struct RunConfig {
  ReceiverGeometry geometry;
  int nr = 0;
  int nz = 0;
  Conductivities conductivity;  // [plate, wall]
  SurfacePhysics physics;
  CylMethod method = CylMethod::ExactIntegral;
  SolveOptions solver;
  std::vector<OutputFormat> formats{OutputFormat::Csv};
  std::string output_prefix = "receiver";

  std::string output_path(OutputFormat format) const;
};

/// Sectioned `key = value` text with `#` comments. Unknown sections and
/// keys, duplicates and malformed numbers are rejected with
/// Error(Parse) naming `source:line`; missing required keys likewise.
RunConfig parse_config(std::string_view text, std::string_view source = "<config>");
RunConfig load_config(const std::string& path);

Mesh build_mesh(const RunConfig& config);
ReceiverRun run_config(const RunConfig& config);

}  // namespace rfem
