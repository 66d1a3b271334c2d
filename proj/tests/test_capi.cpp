// Exercises the shared library through its C header only.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "rfem/rfem.h"

namespace {

const char* kConfig = R"([geometry]
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
[solver]
method = masscenter
[output]
formats = csv
prefix = capi_run
)";

rfem_config* parse(const char* text) {
  rfem_config* cfg = nullptr;
  REQUIRE(rfem_config_parse(text, &cfg) == RFEM_OK);
  return cfg;
}

}  // namespace

TEST_CASE("parse errors map to status codes") {
  rfem_config* cfg = nullptr;
  CHECK(rfem_config_parse("[geometry]\nradius = 1\n", &cfg) == RFEM_ERR_PARSE);
  CHECK(cfg == nullptr);
  CHECK(std::string(rfem_last_error()).find("radius") != std::string::npos);
  CHECK(rfem_config_load("/nonexistent.cfg", &cfg) == RFEM_ERR_IO);
  CHECK(rfem_config_parse(nullptr, &cfg) == RFEM_ERR_INVALID_ARGUMENT);
  CHECK(std::string(rfem_status_string(RFEM_ERR_SOLVER)).size() > 0);
}

TEST_CASE("method names") {
  rfem_method m;
  CHECK(rfem_method_from_name("modified", &m) == RFEM_OK);
  CHECK(m == RFEM_METHOD_MODIFIED);
  CHECK(std::string(rfem_method_name(RFEM_METHOD_EXACT)) == "exact");
  CHECK(rfem_method_from_name("other", &m) != RFEM_OK);
}

TEST_CASE("overrides take precedence over the file") {
  rfem_config* cfg = parse(kConfig);
  rfem_method m;
  rfem_config_get_method(cfg, &m);
  CHECK(m == RFEM_METHOD_MASSCENTER);
  CHECK(rfem_config_set_method(cfg, RFEM_METHOD_EXACT) == RFEM_OK);
  rfem_config_get_method(cfg, &m);
  CHECK(m == RFEM_METHOD_EXACT);

  int nr = 0, nz = 0;
  rfem_config_get_resolution(cfg, &nr, &nz);
  CHECK(nr == 8);
  CHECK(nz == 12);
  CHECK(rfem_config_set_resolution(cfg, 10, nz) == RFEM_OK);
  CHECK(rfem_config_set_resolution(cfg, 0, 4) == RFEM_ERR_CONFIG);

  unsigned mask = 0;
  rfem_config_formats(cfg, &mask);
  CHECK(mask == RFEM_FORMAT_CSV);
  CHECK(rfem_config_set_formats(cfg, "vtk,pgm") == RFEM_OK);
  rfem_config_formats(cfg, &mask);
  CHECK(mask == (RFEM_FORMAT_VTK | RFEM_FORMAT_PGM));
  CHECK(rfem_config_set_formats(cfg, "xml") == RFEM_ERR_CONFIG);

  CHECK(rfem_config_set_output_prefix(cfg, "elsewhere") == RFEM_OK);
  size_t needed = 0;
  CHECK(rfem_config_output_path(cfg, RFEM_FORMAT_VTK, nullptr, 0, &needed) == RFEM_OK);
  std::string path(needed, '\0');
  CHECK(rfem_config_output_path(cfg, RFEM_FORMAT_VTK, path.data(), path.size(), &needed) == RFEM_OK);
  CHECK(std::string(path.c_str()) == "elsewhere_temperature.vtk");
  char small[4];
  CHECK(rfem_config_output_path(cfg, RFEM_FORMAT_VTK, small, sizeof small, &needed) ==
        RFEM_ERR_INVALID_ARGUMENT);

  rfem_mesh_info info;
  REQUIRE(rfem_mesh_info_from_config(cfg, &info) == RFEM_OK);
  CHECK(info.nr == 10);
  CHECK(info.valid);
  CHECK(info.mesh_area == doctest::Approx(info.domain_area));
  rfem_config_free(cfg);
}

TEST_CASE("solve, query and export") {
  rfem_config* cfg = parse(kConfig);
  rfem_result* res = nullptr;
  REQUIRE(rfem_solve(cfg, &res) == RFEM_OK);
  rfem_summary s;
  REQUIRE(rfem_result_summary(res, &s) == RFEM_OK);
  CHECK(s.method == RFEM_METHOD_MASSCENTER);
  CHECK(s.t_max > 900.0);
  CHECK(s.t_min < s.t_max);
  CHECK(s.gross_input > 0.0);
  CHECK(s.imbalance_fraction < 0.02);

  size_t count = 0;
  rfem_result_temperatures(res, nullptr, 0, &count);
  CHECK(count == s.node_count);
  std::vector<double> t(count);
  rfem_result_temperatures(res, t.data(), t.size(), &count);
  double lo = 1e300;
  for (double v : t) lo = std::min(lo, v);
  CHECK(lo == s.t_min);
  double r = 0, z = 0;
  CHECK(rfem_result_node(res, 0, &r, &z) == RFEM_OK);
  CHECK(r > 0.0);
  CHECK(rfem_result_node(res, count, &r, &z) == RFEM_ERR_INVALID_ARGUMENT);

  CHECK(rfem_result_export(res, RFEM_FORMAT_CSV, "capi_run.csv") == RFEM_OK);
  std::ifstream in("capi_run.csv");
  std::string header;
  std::getline(in, header);
  CHECK(header == "node_id,r,z,T");
  CHECK(rfem_result_export(res, RFEM_FORMAT_CSV, "/nonexistent/x.csv") == RFEM_ERR_IO);
  std::remove("capi_run.csv");

  rfem_result_free(res);
  rfem_config_free(cfg);
}

TEST_CASE("unconstrained receiver is a solver error") {
  std::string text = kConfig;
  for (const char* key : {"convection_coefficient = 15", "loss_coefficient = 0.5",
                          "exchanger_coefficient = 1000", "h = 15"}) {
    for (auto pos = text.find(key); pos != std::string::npos; pos = text.find(key)) {
      const std::string k(key);
      text.replace(pos, k.size(), k.substr(0, k.find('=')) + "= 0");
    }
  }
  rfem_config* cfg = parse(text.c_str());
  rfem_result* res = nullptr;
  CHECK(rfem_solve(cfg, &res) == RFEM_ERR_SOLVER);
  CHECK(res == nullptr);
  CHECK(std::string(rfem_last_error()).size() > 0);
  rfem_config_free(cfg);
}

TEST_CASE("verification through the C API") {
  rfem_verify_report rep;
  REQUIRE(rfem_verify(32, &rep) == RFEM_OK);
  CHECK(rep.passed);
  for (int m = 0; m < 3; ++m) {
    CHECK(rep.radial_error[m] < rep.radial_threshold);
    CHECK(rep.axial_error[m] < rep.axial_threshold);
  }
  CHECK(rfem_verify(0, &rep) != RFEM_OK);
}
