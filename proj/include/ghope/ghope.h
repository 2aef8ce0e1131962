/* Copyright graphene-hope contributors. All Rights Reserved.
 * SPDX-License-Identifier: Apache-2.0
 *
 * C interface to the graphene-hope scattering library. All objects are opaque handles
 * owned by the caller and released with the matching *_free function. Every fallible
 * call returns a ghope_status; on failure ghope_last_error() describes the problem
 * (per thread, valid until the next failing call on that thread).
 */

#ifndef GHOPE_GHOPE_H
#define GHOPE_GHOPE_H

#include <stddef.h>

#if defined(_WIN32)
#  if defined(GHOPE_BUILDING_LIBRARY)
#    define GHOPE_API __declspec(dllexport)
#  else
#    define GHOPE_API __declspec(dllimport)
#  endif
#else
#  define GHOPE_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ghope_status
{
  GHOPE_OK = 0,
  GHOPE_ERR_CONFIG = 1,     /* invalid or missing configuration value */
  GHOPE_ERR_NUMERICAL = 2,  /* resonance, singular system, non-finite values */
  GHOPE_ERR_IO = 3,         /* file could not be read or written */
  GHOPE_ERR_ARGUMENT = 4,   /* null handle, index out of range, bad enum */
  GHOPE_ERR_INTERNAL = 5
} ghope_status;

typedef enum ghope_solver
{
  GHOPE_SOLVER_HOPE = 0,
  GHOPE_SOLVER_COLLOCATION = 1,
  GHOPE_SOLVER_BOTH = 2
} ghope_solver;

typedef enum ghope_summation
{
  GHOPE_SUMMATION_TAYLOR = 0,
  GHOPE_SUMMATION_PADE = 1
} ghope_summation;

typedef struct ghope_config ghope_config;
typedef struct ghope_table ghope_table;
typedef struct ghope_convergence ghope_convergence;

/* One sweep row. Quantities that do not apply to the run are NaN. */
typedef struct ghope_row
{
  double d_um;
  double f_THz;
  int solver;    /* ghope_solver */
  int summation; /* ghope_summation */
  int ok;        /* nonzero when the point solved */
  double R;
  double T;
  double A;
  double A_local;
  double A_nonlocal;
  double A_collocation;
  double energy_defect;
  double min_abs_determinant;
  int pade_fallback_count;
} ghope_row;

typedef struct ghope_convergence_row
{
  double d_um;
  double f_THz;
  int order;
  double norm_U;
  double norm_W;
  double ratio_U; /* NaN when undefined */
  double ratio_W;
} ghope_convergence_row;

GHOPE_API const char *ghope_version(void);
GHOPE_API const char *ghope_last_error(void);
/* Config key named by the last GHOPE_ERR_CONFIG failure on this thread, or "". */
GHOPE_API const char *ghope_last_error_key(void);

GHOPE_API ghope_status ghope_config_load(const char *path, ghope_config **out);
GHOPE_API ghope_status ghope_config_parse(const char *text, ghope_config **out);
/* Overrides (or adds) one keyed value and re-validates the whole configuration. */
GHOPE_API ghope_status ghope_config_set(ghope_config *config, const char *key,
                                        const char *value);
/* Canonical keyed text. Writes at most cap bytes (NUL-terminated) and stores the full
 * required size (including the NUL) in *needed when needed is non-null. */
GHOPE_API ghope_status ghope_config_emit(const ghope_config *config, char *buf, size_t cap,
                                         size_t *needed);
GHOPE_API ghope_status ghope_config_write_metadata(const ghope_config *config,
                                                   const char *path);
GHOPE_API void ghope_config_free(ghope_config *config);

GHOPE_API ghope_status ghope_sweep_run(const ghope_config *config, ghope_table **out);
GHOPE_API size_t ghope_table_rows(const ghope_table *table);
GHOPE_API size_t ghope_table_failed_rows(const ghope_table *table);
GHOPE_API ghope_status ghope_table_get(const ghope_table *table, size_t row, ghope_row *out);
/* Status text of one row ("ok", a warning, or the error message). */
GHOPE_API const char *ghope_table_status(const ghope_table *table, size_t row);
GHOPE_API ghope_status ghope_table_write_csv(const ghope_table *table, const char *path);
GHOPE_API void ghope_table_free(ghope_table *table);

GHOPE_API ghope_status ghope_convergence_run(const ghope_config *config,
                                             ghope_convergence **out);
GHOPE_API size_t ghope_convergence_rows(const ghope_convergence *report);
GHOPE_API ghope_status ghope_convergence_get(const ghope_convergence *report, size_t row,
                                             ghope_convergence_row *out);
GHOPE_API ghope_status ghope_convergence_write_csv(const ghope_convergence *report,
                                                   const char *path);
GHOPE_API void ghope_convergence_free(ghope_convergence *report);

#ifdef __cplusplus
}
#endif

#endif /* GHOPE_GHOPE_H */
