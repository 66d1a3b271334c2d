#include "rfem/rfem.h"

#include <cstring>
#include <exception>
#include <string>

#include "rfem/config.hpp"
#include "rfem/error.hpp"
#include "rfem/field_io.hpp"
#include "rfem/verify.hpp"

struct rfem_config {
  rfem::RunConfig cfg;
};

struct rfem_result {
  rfem::ReceiverRun run;
};

namespace {

thread_local std::string g_last_error;

rfem_status status_of(rfem::ErrorKind kind) {
  using rfem::ErrorKind;
  switch (kind) {
    case ErrorKind::Configuration: return RFEM_ERR_CONFIG;
    case ErrorKind::Parse: return RFEM_ERR_PARSE;
    case ErrorKind::Geometry: return RFEM_ERR_GEOMETRY;
    case ErrorKind::Material: return RFEM_ERR_MATERIAL;
    case ErrorKind::UnsupportedElement: return RFEM_ERR_UNSUPPORTED_ELEMENT;
    case ErrorKind::Solver: return RFEM_ERR_SOLVER;
    case ErrorKind::Domain: return RFEM_ERR_DOMAIN;
    case ErrorKind::OracleNonconvergence: return RFEM_ERR_ORACLE;
    case ErrorKind::Io: return RFEM_ERR_IO;
  }
  return RFEM_ERR_INTERNAL;
}

rfem_status fail(rfem_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

template <typename F>
rfem_status guarded(F&& body) {
  try {
    body();
    return RFEM_OK;
  } catch (const rfem::Error& e) {
    return fail(status_of(e.kind()), e.what());
  } catch (const std::exception& e) {
    return fail(RFEM_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(RFEM_ERR_INTERNAL, "unknown exception");
  }
}

rfem_status null_argument(const char* fn) {
  return fail(RFEM_ERR_INVALID_ARGUMENT, std::string(fn) + ": null argument");
}

rfem::CylMethod to_core(rfem_method m) {
  switch (m) {
    case RFEM_METHOD_MASSCENTER: return rfem::CylMethod::MassCenter;
    case RFEM_METHOD_MODIFIED: return rfem::CylMethod::ModifiedConductivity;
    case RFEM_METHOD_EXACT: break;
  }
  return rfem::CylMethod::ExactIntegral;
}

rfem_method to_c(rfem::CylMethod m) {
  switch (m) {
    case rfem::CylMethod::MassCenter: return RFEM_METHOD_MASSCENTER;
    case rfem::CylMethod::ModifiedConductivity: return RFEM_METHOD_MODIFIED;
    case rfem::CylMethod::ExactIntegral: break;
  }
  return RFEM_METHOD_EXACT;
}

bool valid_method(rfem_method m) {
  return m == RFEM_METHOD_EXACT || m == RFEM_METHOD_MASSCENTER || m == RFEM_METHOD_MODIFIED;
}

bool format_of(rfem_format f, rfem::OutputFormat& out) {
  switch (f) {
    case RFEM_FORMAT_CSV: out = rfem::OutputFormat::Csv; return true;
    case RFEM_FORMAT_VTK: out = rfem::OutputFormat::Vtk; return true;
    case RFEM_FORMAT_PGM: out = rfem::OutputFormat::Pgm; return true;
  }
  return false;
}

int surface_index(rfem::SurfaceTag tag) { return static_cast<int>(tag); }

}  // namespace

extern "C" {

const char* rfem_last_error(void) { return g_last_error.c_str(); }

const char* rfem_status_string(rfem_status status) {
  switch (status) {
    case RFEM_OK: return "ok";
    case RFEM_ERR_CONFIG: return "configuration error";
    case RFEM_ERR_PARSE: return "parse error";
    case RFEM_ERR_GEOMETRY: return "geometry error";
    case RFEM_ERR_MATERIAL: return "material error";
    case RFEM_ERR_UNSUPPORTED_ELEMENT: return "unsupported element";
    case RFEM_ERR_SOLVER: return "solver error";
    case RFEM_ERR_DOMAIN: return "domain error";
    case RFEM_ERR_ORACLE: return "oracle did not converge";
    case RFEM_ERR_IO: return "I/O error";
    case RFEM_ERR_INVALID_ARGUMENT: return "invalid argument";
    case RFEM_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* rfem_method_name(rfem_method method) {
  return valid_method(method) ? rfem::to_string(to_core(method)) : "?";
}

rfem_status rfem_method_from_name(const char* name, rfem_method* out) {
  if (name == nullptr || out == nullptr) return null_argument("rfem_method_from_name");
  const auto m = rfem::method_from_string(name);
  if (!m) {
    return fail(RFEM_ERR_CONFIG,
                std::string("unknown method '") + name + "' (exact|masscenter|modified)");
  }
  *out = to_c(*m);
  return RFEM_OK;
}

rfem_status rfem_config_load(const char* path, rfem_config** out) {
  if (path == nullptr || out == nullptr) return null_argument("rfem_config_load");
  *out = nullptr;
  return guarded([&] { *out = new rfem_config{rfem::load_config(path)}; });
}

rfem_status rfem_config_parse(const char* text, rfem_config** out) {
  if (text == nullptr || out == nullptr) return null_argument("rfem_config_parse");
  *out = nullptr;
  return guarded([&] { *out = new rfem_config{rfem::parse_config(text)}; });
}

void rfem_config_free(rfem_config* config) { delete config; }

rfem_status rfem_config_get_method(const rfem_config* config, rfem_method* out) {
  if (config == nullptr || out == nullptr) return null_argument("rfem_config_get_method");
  *out = to_c(config->cfg.method);
  return RFEM_OK;
}

rfem_status rfem_config_set_method(rfem_config* config, rfem_method method) {
  if (config == nullptr) return null_argument("rfem_config_set_method");
  if (!valid_method(method)) return fail(RFEM_ERR_INVALID_ARGUMENT, "invalid method value");
  config->cfg.method = to_core(method);
  return RFEM_OK;
}

rfem_status rfem_config_get_resolution(const rfem_config* config, int* nr, int* nz) {
  if (config == nullptr || nr == nullptr || nz == nullptr) {
    return null_argument("rfem_config_get_resolution");
  }
  *nr = config->cfg.nr;
  *nz = config->cfg.nz;
  return RFEM_OK;
}

rfem_status rfem_config_set_resolution(rfem_config* config, int nr, int nz) {
  if (config == nullptr) return null_argument("rfem_config_set_resolution");
  if (nr < 1 || nz < 1) return fail(RFEM_ERR_CONFIG, "mesh resolution must be at least 1 x 1");
  config->cfg.nr = nr;
  config->cfg.nz = nz;
  return RFEM_OK;
}

rfem_status rfem_config_set_output_prefix(rfem_config* config, const char* prefix) {
  if (config == nullptr || prefix == nullptr) return null_argument("rfem_config_set_output_prefix");
  config->cfg.output_prefix = prefix;
  return RFEM_OK;
}

rfem_status rfem_config_set_formats(rfem_config* config, const char* list) {
  if (config == nullptr || list == nullptr) return null_argument("rfem_config_set_formats");
  return guarded([&] { config->cfg.formats = rfem::parse_formats(list); });
}

rfem_status rfem_config_formats(const rfem_config* config, unsigned* mask) {
  if (config == nullptr || mask == nullptr) return null_argument("rfem_config_formats");
  *mask = 0;
  for (auto f : config->cfg.formats) {
    switch (f) {
      case rfem::OutputFormat::Csv: *mask |= RFEM_FORMAT_CSV; break;
      case rfem::OutputFormat::Vtk: *mask |= RFEM_FORMAT_VTK; break;
      case rfem::OutputFormat::Pgm: *mask |= RFEM_FORMAT_PGM; break;
    }
  }
  return RFEM_OK;
}

rfem_status rfem_config_output_path(const rfem_config* config, rfem_format format, char* buffer,
                                    size_t capacity, size_t* needed) {
  if (config == nullptr) return null_argument("rfem_config_output_path");
  rfem::OutputFormat f;
  if (!format_of(format, f)) return fail(RFEM_ERR_INVALID_ARGUMENT, "invalid format value");
  const std::string path = config->cfg.output_path(f);
  if (needed != nullptr) *needed = path.size() + 1;
  if (buffer == nullptr && capacity == 0) return RFEM_OK;  // size query
  if (buffer == nullptr || capacity < path.size() + 1) {
    return fail(RFEM_ERR_INVALID_ARGUMENT, "output path buffer too small");
  }
  std::memcpy(buffer, path.c_str(), path.size() + 1);
  return RFEM_OK;
}

rfem_status rfem_mesh_info_from_config(const rfem_config* config, rfem_mesh_info* out) {
  if (config == nullptr || out == nullptr) return null_argument("rfem_mesh_info_from_config");
  return guarded([&] {
    const rfem::Mesh mesh = rfem::build_mesh(config->cfg);
    const rfem::Mesh renumbered = rfem::renumber_bandwidth(mesh);
    const auto diag = rfem::validate_mesh(mesh);
    rfem_mesh_info info{};
    info.nr = static_cast<int>(mesh.r_lines.size()) - 1;
    info.nz = static_cast<int>(mesh.z_lines.size()) - 1;
    info.node_count = mesh.nodes.size();
    info.element_count = mesh.elements.size();
    info.boundary_edge_count = mesh.boundary.size();
    info.half_bandwidth_generated = mesh.half_bandwidth;
    info.half_bandwidth = renumbered.half_bandwidth;
    info.domain_area = config->cfg.geometry.area();
    info.mesh_area = mesh.total_area();
    info.boundary_length = mesh.boundary_length();
    for (const auto& e : mesh.boundary) {
      if (e.tag != rfem::SurfaceTag::Untagged) info.surface_length[surface_index(e.tag)] += e.length;
    }
    info.violations = diag.orientation_violations + diag.degenerate_elements +
                      diag.untagged_edges + diag.nonconforming_edges;
    info.valid = diag.ok() ? 1 : 0;
    *out = info;
  });
}

rfem_status rfem_solve(const rfem_config* config, rfem_result** out) {
  if (config == nullptr || out == nullptr) return null_argument("rfem_solve");
  *out = nullptr;
  return guarded([&] { *out = new rfem_result{rfem::run_config(config->cfg)}; });
}

void rfem_result_free(rfem_result* result) { delete result; }

rfem_status rfem_result_summary(const rfem_result* result, rfem_summary* out) {
  if (result == nullptr || out == nullptr) return null_argument("rfem_result_summary");
  const auto& run = result->run;
  rfem_summary s{};
  s.method = to_c(run.method);
  s.node_count = run.field.mesh->nodes.size();
  s.element_count = run.field.mesh->elements.size();
  s.half_bandwidth = run.half_bandwidth;
  s.residual_norm = run.residual_norm;
  s.used_dense_fallback = run.used_dense_fallback ? 1 : 0;
  s.t_min = run.field.min_temperature();
  s.t_max = run.field.max_temperature();
  for (const auto& [tag, flow] : run.balance.outflow) {
    if (tag != rfem::SurfaceTag::Untagged) s.surface_outflow[surface_index(tag)] = flow;
  }
  s.net_outflow = run.balance.net_outflow;
  s.gross_input = run.balance.gross_input;
  s.imbalance_fraction = run.balance.imbalance_fraction;
  *out = s;
  return RFEM_OK;
}

rfem_status rfem_result_temperatures(const rfem_result* result, double* buffer, size_t capacity,
                                     size_t* count) {
  if (result == nullptr) return null_argument("rfem_result_temperatures");
  const auto& t = result->run.field.temperature;
  if (count != nullptr) *count = t.size();
  if (buffer != nullptr) {
    const size_t n = capacity < t.size() ? capacity : t.size();
    std::memcpy(buffer, t.data(), n * sizeof(double));
  }
  return RFEM_OK;
}

rfem_status rfem_result_node(const rfem_result* result, size_t index, double* r, double* z) {
  if (result == nullptr || r == nullptr || z == nullptr) return null_argument("rfem_result_node");
  const auto& nodes = result->run.field.mesh->nodes;
  if (index >= nodes.size()) return fail(RFEM_ERR_INVALID_ARGUMENT, "node index out of range");
  *r = nodes[index].r;
  *z = nodes[index].z;
  return RFEM_OK;
}

rfem_status rfem_result_export(const rfem_result* result, rfem_format format, const char* path) {
  if (result == nullptr || path == nullptr) return null_argument("rfem_result_export");
  rfem::OutputFormat f;
  if (!format_of(format, f)) return fail(RFEM_ERR_INVALID_ARGUMENT, "invalid format value");
  return guarded([&] { rfem::export_field(result->run.field, f, path); });
}

rfem_status rfem_verify(int resolution, rfem_verify_report* out) {
  if (out == nullptr) return null_argument("rfem_verify");
  if (resolution < 1) return fail(RFEM_ERR_CONFIG, "verification resolution must be positive");
  return guarded([&] {
    const auto report = rfem::verify::run_verification(resolution);
    rfem_verify_report r{};
    r.resolution = resolution;
    for (const auto& [m, err] : report.radial_error) r.radial_error[to_c(m)] = err;
    for (const auto& [m, err] : report.axial_error) r.axial_error[to_c(m)] = err;
    r.radial_threshold = rfem::verify::kRadialThreshold;
    r.axial_threshold = rfem::verify::kAxialThreshold;
    r.passed = report.passed ? 1 : 0;
    *out = r;
  });
}

}  // extern "C"
