/* SPDX-License-Identifier: Apache-2.0 */

#ifndef ZIPSMOOTH_H
#define ZIPSMOOTH_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(ZIPSMOOTH_BUILDING)
#define ZS_API __declspec(dllexport)
#else
#define ZS_API __declspec(dllimport)
#endif
#else
#define ZS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Values match the library's internal error codes. */
typedef enum zs_status {
  ZS_OK = 0,
  ZS_INVALID_ARGUMENT = 1,
  ZS_DIMENSION_MISMATCH,
  ZS_SINGULAR_SYSTEM,
  ZS_ZIPPER_VIOLATION,
  ZS_INVALID_NODES,
  ZS_NOT_CONTRACTING,
  ZS_SIGNATURE_MISMATCH,
  ZS_COUNT_MISMATCH,
  ZS_OUT_OF_DOMAIN,
  ZS_TOLERANCE_UNREACHABLE,
  ZS_NOT_NORMALIZED,
  ZS_DEGENERATE_INPUT,
  ZS_DEPTH_CAP,
  ZS_INVALID_CONFIG,
  ZS_PARSE_ERROR,
  ZS_SHAPE_ERROR,
  ZS_IO_ERROR,
  ZS_DIMENSION_UNSUPPORTED,
  ZS_ZERO_TANGENT,
  ZS_COMBINATORIAL_BUDGET,
  ZS_INTERNAL_ERROR = 100
} zs_status;

/* Opaque handles. */
typedef struct zs_system zs_system;     /* zipper plus line zipper */
typedef struct zs_lift zs_lift;         /* h, node integrals, lifted maps */
typedef struct zs_polyline zs_polyline; /* rendered or sampled points */

/* Message of the last failure on this thread; empty after success.
   Valid until the next call on the same thread. */
ZS_API const char* zs_last_error(void);
ZS_API const char* zs_status_name(zs_status status);

/* Strings returned through char** are owned by the caller. */
ZS_API void zs_string_free(char* text);

/* ---- systems ---- */

/* Strict JSON config. On ZS_ZIPPER_VIOLATION, *report_json (if non-null)
   receives the validation report. */
ZS_API zs_status zs_system_from_json(const char* json, zs_system** out,
                                     char** report_json);
ZS_API zs_status zs_system_example1(double p, zs_system** out);
ZS_API zs_status zs_system_example1_general(double q1, double y1, double y2,
                                            zs_system** out);
ZS_API zs_status zs_system_example2(double h, zs_system** out);
ZS_API void zs_system_free(zs_system* system);

ZS_API size_t zs_system_dimension(const zs_system* system);
ZS_API size_t zs_system_map_count(const zs_system* system);
ZS_API zs_status zs_system_to_json(const zs_system* system, char** json);
ZS_API zs_status zs_system_validation_json(const zs_system* system,
                                           char** json);

/* Validates a config without building a system. *ok is 1 when the config
   is a zipper; the report is written either way. */
ZS_API zs_status zs_validate_json(const char* json, int* ok,
                                  char** report_json);

/* Conjugates by x -> x - z_0. translation receives dimension() values. */
ZS_API zs_status zs_system_normalize(const zs_system* system, zs_system** out,
                                     double* translation);

/* ---- evaluation ---- */

/* value receives dimension() values. */
ZS_API zs_status zs_eval_f(const zs_system* system, double t, double tol,
                           double* value, double* error_bound);

/* Requires z_0 = 0 (see zs_system_normalize). */
ZS_API zs_status zs_lift_create(const zs_system* system, zs_lift** out);
ZS_API void zs_lift_free(zs_lift* lift);
ZS_API zs_status zs_lift_h(const zs_lift* lift, double* h);
/* The lifted self-affine zipper on (t, x) with its own line zipper. */
ZS_API zs_status zs_lift_system(const zs_lift* lift, zs_system** out);
ZS_API zs_status zs_eval_g(const zs_system* system, const zs_lift* lift,
                           double t, double tol, double* value,
                           double* error_bound);

/* ---- rendering ---- */

/* Depth-d refinement of the product zipper {T_i x S_i} (lifted == 0) or
   of the lifted zipper (lifted != 0). The first coordinate becomes t. */
ZS_API zs_status zs_render(const zs_system* system, size_t depth, int lifted,
                           zs_polyline** out);
ZS_API zs_status zs_chaos_game(const zs_system* system, size_t count,
                               uint64_t seed, zs_polyline** out);
ZS_API void zs_polyline_free(zs_polyline* polyline);
ZS_API size_t zs_polyline_size(const zs_polyline* polyline);
ZS_API size_t zs_polyline_dimension(const zs_polyline* polyline);
ZS_API int zs_polyline_has_params(const zs_polyline* polyline);
ZS_API double zs_polyline_mesh_bound(const zs_polyline* polyline);
/* Row of columns (t first when present); length dimension() + has_params. */
ZS_API zs_status zs_polyline_row(const zs_polyline* polyline, size_t index,
                                 double* row);
ZS_API zs_status zs_polyline_write_csv(const zs_polyline* polyline,
                                       const char* path);
/* axis0/axis1 index the columns; pass -1 for the default first two. */
ZS_API zs_status zs_polyline_write_svg(const zs_polyline* polyline,
                                       const char* path, double width,
                                       double height, double stroke_width,
                                       int axis0, int axis1);

/* ---- verification and design ---- */

/* suite: all|feq|quad|deriv|tangent|contraction. *all_passed is 1 when
   every report passed. */
ZS_API zs_status zs_verify(const zs_system* system, const char* suite,
                           char** report_json, int* all_passed);

ZS_API zs_status zs_inverse_design(double q1, double q2, double x1, double g1,
                                   double g2, double* y1, double* y2);

#ifdef __cplusplus
}
#endif

#endif
