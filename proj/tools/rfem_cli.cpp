// Command-line front end; talks to the solver only through the C API.

#include <CLI11.hpp>
#include <cstdio>
#include <memory>
#include <string>

#include "rfem/rfem.h"

namespace {

constexpr const char kSurfaceNames[] = "ABCDE";

struct ConfigDeleter {
  void operator()(rfem_config* c) const { rfem_config_free(c); }
};
struct ResultDeleter {
  void operator()(rfem_result* r) const { rfem_result_free(r); }
};
using ConfigPtr = std::unique_ptr<rfem_config, ConfigDeleter>;
using ResultPtr = std::unique_ptr<rfem_result, ResultDeleter>;

int report(rfem_status status) {
  std::fprintf(stderr, "error [%s]: %s\n", rfem_status_string(status), rfem_last_error());
  return static_cast<int>(status);
}

struct SolveArgs {
  std::string config;
  std::string method;
  int nr = 0;
  int nz = 0;
  std::string out;
  std::string formats;
};

int load(const std::string& path, ConfigPtr& cfg) {
  rfem_config* raw = nullptr;
  const rfem_status st = rfem_config_load(path.c_str(), &raw);
  cfg.reset(raw);
  return st == RFEM_OK ? 0 : report(st);
}

int apply_overrides(const SolveArgs& args, rfem_config* cfg) {
  if (!args.method.empty()) {
    rfem_method m;
    if (auto st = rfem_method_from_name(args.method.c_str(), &m); st != RFEM_OK) return report(st);
    rfem_config_set_method(cfg, m);
  }
  if (args.nr > 0 || args.nz > 0) {
    int nr = 0, nz = 0;
    rfem_config_get_resolution(cfg, &nr, &nz);
    if (args.nr > 0) nr = args.nr;
    if (args.nz > 0) nz = args.nz;
    if (auto st = rfem_config_set_resolution(cfg, nr, nz); st != RFEM_OK) return report(st);
  }
  if (!args.out.empty()) rfem_config_set_output_prefix(cfg, args.out.c_str());
  if (!args.formats.empty()) {
    if (auto st = rfem_config_set_formats(cfg, args.formats.c_str()); st != RFEM_OK) {
      return report(st);
    }
  }
  return 0;
}

int run_solve(const SolveArgs& args) {
  ConfigPtr cfg;
  if (int rc = load(args.config, cfg)) return rc;
  if (int rc = apply_overrides(args, cfg.get())) return rc;

  rfem_result* raw = nullptr;
  if (auto st = rfem_solve(cfg.get(), &raw); st != RFEM_OK) return report(st);
  ResultPtr result(raw);

  rfem_summary s;
  rfem_result_summary(result.get(), &s);
  std::printf("method              %s\n", rfem_method_name(s.method));
  std::printf("nodes               %zu\n", s.node_count);
  std::printf("elements            %zu\n", s.element_count);
  std::printf("half bandwidth      %zu\n", s.half_bandwidth);
  std::printf("residual norm       %.9g%s\n", s.residual_norm,
              s.used_dense_fallback ? " (dense fallback)" : "");
  std::printf("T min [K]           %.9g\n", s.t_min);
  std::printf("T max [K]           %.9g\n", s.t_max);
  for (int k = 0; k < RFEM_SURFACE_COUNT; ++k) {
    std::printf("outflow %c [W]       %.9g\n", kSurfaceNames[k], s.surface_outflow[k]);
  }
  std::printf("gross input [W]     %.9g\n", s.gross_input);
  std::printf("net outflow [W]     %.9g\n", s.net_outflow);
  std::printf("imbalance fraction  %.9g\n", s.imbalance_fraction);

  unsigned mask = 0;
  rfem_config_formats(cfg.get(), &mask);
  for (rfem_format f : {RFEM_FORMAT_CSV, RFEM_FORMAT_VTK, RFEM_FORMAT_PGM}) {
    if (!(mask & f)) continue;
    size_t needed = 0;
    rfem_config_output_path(cfg.get(), f, nullptr, 0, &needed);
    std::string path(needed, '\0');
    rfem_config_output_path(cfg.get(), f, path.data(), path.size(), &needed);
    path.pop_back();
    if (auto st = rfem_result_export(result.get(), f, path.c_str()); st != RFEM_OK) {
      return report(st);
    }
    std::printf("wrote               %s\n", path.c_str());
  }
  return 0;
}

int run_verify(int resolution) {
  rfem_verify_report r;
  if (auto st = rfem_verify(resolution, &r); st != RFEM_OK) return report(st);
  for (rfem_method m : {RFEM_METHOD_EXACT, RFEM_METHOD_MASSCENTER, RFEM_METHOD_MODIFIED}) {
    const bool radial_ok = r.radial_error[m] < r.radial_threshold;
    const bool axial_ok = r.axial_error[m] < r.axial_threshold;
    std::printf("%-10s radial max rel error %.9g (< %g) %s\n", rfem_method_name(m),
                r.radial_error[m], r.radial_threshold, radial_ok ? "PASS" : "FAIL");
    std::printf("%-10s axial  max rel error %.9g (< %g) %s\n", rfem_method_name(m),
                r.axial_error[m], r.axial_threshold, axial_ok ? "PASS" : "FAIL");
  }
  std::printf("verification %s\n", r.passed ? "PASSED" : "FAILED");
  return r.passed ? 0 : 1;
}

int run_mesh_info(const std::string& path) {
  ConfigPtr cfg;
  if (int rc = load(path, cfg)) return rc;
  rfem_mesh_info info;
  if (auto st = rfem_mesh_info_from_config(cfg.get(), &info); st != RFEM_OK) return report(st);
  std::printf("cells               %d x %d\n", info.nr, info.nz);
  std::printf("nodes               %zu\n", info.node_count);
  std::printf("elements            %zu\n", info.element_count);
  std::printf("boundary edges      %zu\n", info.boundary_edge_count);
  std::printf("half bandwidth      %zu (generated %zu)\n", info.half_bandwidth,
              info.half_bandwidth_generated);
  std::printf("domain area [m2]    %.9g\n", info.domain_area);
  std::printf("mesh area [m2]      %.9g\n", info.mesh_area);
  std::printf("boundary length [m] %.9g\n", info.boundary_length);
  for (int k = 0; k < RFEM_SURFACE_COUNT; ++k) {
    std::printf("surface %c length    %.9g\n", kSurfaceNames[k], info.surface_length[k]);
  }
  std::printf("validation          %s (%zu violations)\n", info.valid ? "pass" : "FAIL",
              info.violations);
  return info.valid ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Axisymmetric finite-element conduction solver for solar cavity receivers"};
  app.require_subcommand(1);

  SolveArgs solve_args;
  auto* solve = app.add_subcommand("solve", "Solve a receiver configuration");
  solve->add_option("--config", solve_args.config, "Configuration file")->required();
  solve->add_option("--method", solve_args.method, "exact | masscenter | modified")
      ->check(CLI::IsMember({"exact", "masscenter", "modified"}));
  solve->add_option("--nr", solve_args.nr, "Radial cell count")->check(CLI::PositiveNumber);
  solve->add_option("--nz", solve_args.nz, "Axial cell count")->check(CLI::PositiveNumber);
  solve->add_option("--out", solve_args.out, "Output path prefix");
  solve->add_option("--format", solve_args.formats, "Comma-separated: csv,vtk,pgm");

  int resolution = 32;
  auto* verify = app.add_subcommand("verify", "Run the analytic verification cases");
  verify->add_option("--resolution", resolution, "Cells across the varying direction")
      ->check(CLI::PositiveNumber);

  std::string info_config;
  auto* info = app.add_subcommand("mesh-info", "Describe the mesh a configuration produces");
  info->add_option("--config", info_config, "Configuration file")->required();

  CLI11_PARSE(app, argc, argv);

  if (*solve) return run_solve(solve_args);
  if (*verify) return run_verify(resolution);
  if (*info) return run_mesh_info(info_config);
  return 0;
}
