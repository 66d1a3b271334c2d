/*
 * C interface to the axisymmetric cavity-receiver conduction solver.
 *
 * Objects are opaque handles created by rfem_*_load / rfem_solve and
 * released with the matching *_free call. Every fallible function returns an
 * rfem_status; on failure rfem_last_error() holds a message for the calling
 * thread until its next failing call.
 */
#ifndef RFEM_RFEM_H
#define RFEM_RFEM_H

#include <stddef.h>

#if defined(_WIN32)
#  if defined(RFEM_BUILDING_LIBRARY)
#    define RFEM_API __declspec(dllexport)
#  else
#    define RFEM_API __declspec(dllimport)
#  endif
#else
#  define RFEM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rfem_status {
  RFEM_OK = 0,
  RFEM_ERR_CONFIG = 1,
  RFEM_ERR_PARSE = 2,
  RFEM_ERR_GEOMETRY = 3,
  RFEM_ERR_MATERIAL = 4,
  RFEM_ERR_UNSUPPORTED_ELEMENT = 5,
  RFEM_ERR_SOLVER = 6,
  RFEM_ERR_DOMAIN = 7,
  RFEM_ERR_ORACLE = 8,
  RFEM_ERR_IO = 9,
  RFEM_ERR_INVALID_ARGUMENT = 10,
  RFEM_ERR_INTERNAL = 11
} rfem_status;

typedef enum rfem_method {
  RFEM_METHOD_EXACT = 0,
  RFEM_METHOD_MASSCENTER = 1,
  RFEM_METHOD_MODIFIED = 2
} rfem_method;

/* Bit flags; combine with | for rfem_config_formats. */
typedef enum rfem_format {
  RFEM_FORMAT_CSV = 1,
  RFEM_FORMAT_VTK = 2,
  RFEM_FORMAT_PGM = 4
} rfem_format;

/* Surface indices used by the per-surface arrays below. */
enum { RFEM_SURFACE_A = 0, RFEM_SURFACE_B, RFEM_SURFACE_C, RFEM_SURFACE_D, RFEM_SURFACE_E,
       RFEM_SURFACE_COUNT };

typedef struct rfem_config rfem_config;
typedef struct rfem_result rfem_result;

typedef struct rfem_mesh_info {
  int nr, nz; /* effective cell counts after snapping */
  size_t node_count;
  size_t element_count;
  size_t boundary_edge_count;
  size_t half_bandwidth_generated;
  size_t half_bandwidth; /* after renumbering */
  double domain_area;
  double mesh_area;
  double boundary_length;
  double surface_length[RFEM_SURFACE_COUNT];
  size_t violations;
  int valid;
} rfem_mesh_info;

typedef struct rfem_summary {
  rfem_method method;
  size_t node_count;
  size_t element_count;
  size_t half_bandwidth;
  double residual_norm;
  int used_dense_fallback;
  double t_min, t_max;
  double surface_outflow[RFEM_SURFACE_COUNT]; /* W, positive = leaving */
  double net_outflow;
  double gross_input;
  double imbalance_fraction;
} rfem_summary;

typedef struct rfem_verify_report {
  int resolution;
  double radial_error[3]; /* indexed by rfem_method */
  double axial_error[3];
  double radial_threshold;
  double axial_threshold;
  int passed;
} rfem_verify_report;

RFEM_API const char* rfem_last_error(void);
RFEM_API const char* rfem_status_string(rfem_status status);

RFEM_API const char* rfem_method_name(rfem_method method);
RFEM_API rfem_status rfem_method_from_name(const char* name, rfem_method* out);

RFEM_API rfem_status rfem_config_load(const char* path, rfem_config** out);
RFEM_API rfem_status rfem_config_parse(const char* text, rfem_config** out);
RFEM_API void rfem_config_free(rfem_config* config);

RFEM_API rfem_status rfem_config_get_method(const rfem_config* config, rfem_method* out);
RFEM_API rfem_status rfem_config_set_method(rfem_config* config, rfem_method method);
RFEM_API rfem_status rfem_config_get_resolution(const rfem_config* config, int* nr, int* nz);
RFEM_API rfem_status rfem_config_set_resolution(rfem_config* config, int nr, int nz);
RFEM_API rfem_status rfem_config_set_output_prefix(rfem_config* config, const char* prefix);
/* Comma-separated list, e.g. "csv,vtk". */
RFEM_API rfem_status rfem_config_set_formats(rfem_config* config, const char* list);
RFEM_API rfem_status rfem_config_formats(const rfem_config* config, unsigned* mask);
/* Writes "<prefix>_temperature.<ext>" into buffer; *needed gets the length
   including the terminator. Pass buffer = NULL, capacity = 0 to query it. */
RFEM_API rfem_status rfem_config_output_path(const rfem_config* config, rfem_format format,
                                             char* buffer, size_t capacity, size_t* needed);

RFEM_API rfem_status rfem_mesh_info_from_config(const rfem_config* config, rfem_mesh_info* out);

RFEM_API rfem_status rfem_solve(const rfem_config* config, rfem_result** out);
RFEM_API void rfem_result_free(rfem_result* result);
RFEM_API rfem_status rfem_result_summary(const rfem_result* result, rfem_summary* out);
/* Copies up to capacity temperatures; *count receives the node count. */
RFEM_API rfem_status rfem_result_temperatures(const rfem_result* result, double* buffer,
                                              size_t capacity, size_t* count);
RFEM_API rfem_status rfem_result_node(const rfem_result* result, size_t index, double* r,
                                      double* z);
RFEM_API rfem_status rfem_result_export(const rfem_result* result, rfem_format format,
                                        const char* path);

RFEM_API rfem_status rfem_verify(int resolution, rfem_verify_report* out);

#ifdef __cplusplus
}
#endif

#endif /* RFEM_RFEM_H */
