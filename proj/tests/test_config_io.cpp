#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "rfem/config.hpp"
#include "rfem/error.hpp"
#include "rfem/field_io.hpp"

using namespace rfem;
namespace fs = std::filesystem;

namespace {

const char* kConfig = R"(# small receiver
[geometry]
r_min = 0.01
r_inner = 0.10
r_outer = 0.13
bottom_thickness = 0.03
wall_height = 0.20

[mesh]
nr = 8
nz = 12

[material]
conductivity = 40

[surface.A]
convection_coefficient = 15
air_temperature = 900
solar_flux = 150000

[surface.C]
convection_coefficient = 15
air_temperature = 900
solar_flux = 150000

[surface.D]
loss_coefficient = 0.5
ambient_temperature = 300

[surface.E]
exchanger_coefficient = 1000
gas_temperature = 900

[surface.B]
h = 15
temperature = 900
flux = 0
)";

std::string with_line_after(const std::string& anchor, const std::string& extra) {
  std::string text = kConfig;
  const auto pos = text.find(anchor);
  REQUIRE(pos != std::string::npos);
  text.insert(text.find('\n', pos) + 1, extra + "\n");
  return text;
}

void expect_parse_error(const std::string& text, const std::string& needle) {
  try {
    parse_config(text, "case.cfg");
    FAIL("expected parse error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Parse);
    INFO(e.what());
    CHECK(std::string(e.what()).find(needle) != std::string::npos);
  }
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "rfem_test_config_io";
  fs::create_directories(dir);
  return dir / name;
}

std::size_t count_lines(const fs::path& p) {
  std::ifstream in(p);
  std::size_t n = 0;
  std::string line;
  while (std::getline(in, line)) ++n;
  return n;
}

}  // namespace

TEST_CASE("parses a complete configuration") {
  const auto cfg = parse_config(kConfig);
  CHECK(cfg.geometry.r_outer == 0.13);
  CHECK(cfg.nr == 8);
  CHECK(cfg.nz == 12);
  CHECK(cfg.conductivity == Conductivities{40.0, 40.0});
  CHECK(cfg.physics.wall.solar_flux == 150000.0);
  CHECK(cfg.physics.exchanger.coefficient == 1000.0);
  CHECK(cfg.method == CylMethod::ExactIntegral);
  CHECK(cfg.formats == std::vector<OutputFormat>{OutputFormat::Csv});
  CHECK(cfg.output_path(OutputFormat::Vtk) == "receiver_temperature.vtk");
}

TEST_CASE("optional sections") {
  const auto cfg = parse_config(std::string(kConfig) +
                                "[solver]\nmethod = modified\nresidual_tolerance = 1e-10\n"
                                "[output]\nformats = vtk, pgm\nprefix = out/run1\n");
  CHECK(cfg.method == CylMethod::ModifiedConductivity);
  CHECK(cfg.solver.residual_tolerance == 1e-10);
  CHECK(cfg.formats == std::vector<OutputFormat>{OutputFormat::Vtk, OutputFormat::Pgm});
  CHECK(cfg.output_path(OutputFormat::Pgm) == "out/run1_temperature.pgm");

  const auto split = parse_config(with_line_after("conductivity = 40", "wall_conductivity = 20"));
  CHECK(split.conductivity == Conductivities{40.0, 20.0});
}

TEST_CASE("errors name the file and line") {
  expect_parse_error(with_line_after("nz = 12", "nx = 3"), "case.cfg:12: unknown key 'nx'");
  expect_parse_error(with_line_after("nz = 12", "nz = 3"), "duplicate key 'nz'");
  expect_parse_error(std::string(kConfig) + "[plot]\n", "unknown section [plot]");
  expect_parse_error(with_line_after("nz = 12", "garbage"), "case.cfg:12:");
  std::string bad = kConfig;
  bad.replace(bad.find("r_outer = 0.13"), 14, "r_outer = 0.1x");
  expect_parse_error(bad, "case.cfg:5:");
  std::string missing = kConfig;
  missing.erase(missing.find("flux = 0"), 8);
  expect_parse_error(missing, "missing required key 'flux'");
  expect_parse_error(std::string(kConfig) + "[solver]\nmethod = fancy\n", "unknown method");
  expect_parse_error(std::string(kConfig) + "[output]\nformats = csv,png\n", "png");
}

TEST_CASE("format list") {
  CHECK(parse_formats("csv") == std::vector<OutputFormat>{OutputFormat::Csv});
  CHECK(parse_formats(" pgm , csv ").size() == 2);
  CHECK_THROWS_AS(parse_formats(""), Error);
  CHECK_THROWS_AS(parse_formats("json"), Error);
  CHECK(std::string(extension(OutputFormat::Vtk)) == "vtk");
}

TEST_CASE("missing file is an IO error") {
  try {
    load_config("/nonexistent/receiver.cfg");
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Io);
  }
}

TEST_CASE("exports round-trip") {
  const auto cfg = parse_config(kConfig);
  const auto run = run_config(cfg);
  const auto& field = run.field;
  const std::size_t n = field.mesh->nodes.size();

  const auto csv = scratch("run.csv");
  write_csv(field, csv.string());
  CHECK(count_lines(csv) == n + 1);
  const auto back = read_csv(csv.string());
  REQUIRE(back.temperature.size() == n);
  for (std::size_t i = 0; i < n; ++i) {
    CHECK(back.temperature[i] == field.temperature[i]);
    CHECK(back.nodes[i].r == field.mesh->nodes[i].r);
    CHECK(back.nodes[i].z == field.mesh->nodes[i].z);
  }

  const auto vtk = scratch("run.vtk");
  write_vtk(field, vtk.string());
  const auto vb = read_vtk(vtk.string());
  REQUIRE(vb.temperature.size() == n);
  REQUIRE(vb.cells.size() == field.mesh->elements.size());
  for (std::size_t i = 0; i < n; ++i) CHECK(vb.temperature[i] == field.temperature[i]);
  for (std::size_t e = 0; e < vb.cells.size(); ++e) {
    for (int k = 0; k < 3; ++k) CHECK(vb.cells[e][k] == field.mesh->elements[e].nodes[k]);
  }
  std::ifstream vin(vtk);
  std::string first, second;
  std::getline(vin, first);
  std::getline(vin, second);
  CHECK(first == "# vtk DataFile Version 3.0");

  const auto pgm = scratch("run.pgm");
  write_pgm(field, pgm.string());
  const auto img = read_pgm(pgm.string());
  CHECK(img.width == 8);
  CHECK(img.height == 12);
  CHECK(img.max_value == 255);
  int hi = 0, lo = 255;
  for (int p : img.pixels) {
    hi = std::max(hi, p);
    lo = std::min(lo, p);
  }
  CHECK(hi <= 255);
  // Cavity cells in the top-left are outside the body.
  CHECK(img.pixels[0] == 0);
  CHECK(hi > 200);
}

TEST_CASE("uniform field maps to white") {
  auto cfg = parse_config(kConfig);
  cfg.physics.wall.solar_flux = 0.0;
  cfg.physics.floor.solar_flux = 0.0;
  cfg.physics.exterior.ambient_temperature = 900.0;
  const auto run = run_config(cfg);
  const auto pgm = scratch("uniform.pgm");
  write_pgm(run.field, pgm.string());
  const auto img = read_pgm(pgm.string());
  const Mesh& m = *run.field.mesh;
  for (int j = 0; j < img.height; ++j) {
    for (int i = 0; i < img.width; ++i) {
      // Row 0 is the top of the domain.
      const double rc = 0.5 * (m.r_lines[i] + m.r_lines[i + 1]);
      const double zc = 0.5 * (m.z_lines[img.height - 1 - j] + m.z_lines[img.height - j]);
      const bool inside = zc < cfg.geometry.bottom_thickness || rc > cfg.geometry.r_inner;
      CHECK(img.pixels[j * img.width + i] == (inside ? 255 : 0));
    }
  }
}

TEST_CASE("shortest round-trip number format") {
  for (double v : {0.1, 1.0 / 3.0, 707.5187475, 1e-300, 123456789.0}) {
    const auto s = format_double(v);
    CHECK(std::stod(s) == v);
  }
  CHECK(format_double(0.1) == "0.1");
}

TEST_CASE("writing to a missing directory is an IO error") {
  const auto run = run_config(parse_config(kConfig));
  try {
    write_csv(run.field, "/nonexistent/dir/x.csv");
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Io);
  }
}
