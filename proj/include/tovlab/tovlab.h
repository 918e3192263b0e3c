#ifndef TOVLAB_H
#define TOVLAB_H

/* C interface to the tovlab library. Every call that can fail returns a
 * tovlab_status; the message of the last failure is kept on the context.
 * Strings handed out through char** must be released with tovlab_free_string.
 * A context must not be used from two threads at once. */

#include <stddef.h>

#if defined(TOVLAB_BUILDING_LIBRARY)
#define TOVLAB_API __attribute__((visibility("default")))
#else
#define TOVLAB_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tovlab_status {
  TOVLAB_OK = 0,
  TOVLAB_INVALID_ARGUMENT = 1,
  TOVLAB_UNKNOWN_ROW = 2,
  TOVLAB_CONFIG = 3,
  TOVLAB_NUMERIC = 4,
  TOVLAB_SINGULARITY = 5,
  TOVLAB_NO_CONVERGENCE = 6,
  TOVLAB_DOMAIN = 7,
  TOVLAB_INTERNAL = 8
} tovlab_status;

typedef enum tovlab_format { TOVLAB_FORMAT_JSON = 0, TOVLAB_FORMAT_CSV = 1 } tovlab_format;

typedef enum tovlab_quantity {
  TOVLAB_Q_H = 0,
  TOVLAB_Q_H_PRIME,
  TOVLAB_Q_F,
  TOVLAB_Q_RHO,
  TOVLAB_Q_MASS,
  TOVLAB_Q_MASS_PRIME,
  TOVLAB_Q_LAMBDA0,
  TOVLAB_Q_LAMBDA1
} tovlab_quantity;

typedef struct tovlab_params {
  double c1;
  double c2;
  double c; /* constant density, read by the constant entry only */
} tovlab_params;

typedef struct tovlab_context tovlab_context;
typedef struct tovlab_entry tovlab_entry;

TOVLAB_API const char* tovlab_version(void);
TOVLAB_API const char* tovlab_status_string(tovlab_status status);
/* c1 = 0, c2 = 1, c = 1 */
TOVLAB_API tovlab_params tovlab_default_params(void);

TOVLAB_API tovlab_status tovlab_context_create(tovlab_context** out);
TOVLAB_API void tovlab_context_destroy(tovlab_context* ctx);
TOVLAB_API const char* tovlab_context_last_error(const tovlab_context* ctx);

/* Keys: quad_rel quad_abs root_tol fd_step residual_tol guard_band base_point
 * r_max jobs format out. Unknown keys and invalid values give TOVLAB_CONFIG
 * and leave the context unchanged. */
TOVLAB_API tovlab_status tovlab_context_set(tovlab_context* ctx, const char* key, const char* value);
TOVLAB_API tovlab_status tovlab_context_get(tovlab_context* ctx, const char* key, char** value);
/* key = value lines; '#' starts a comment; values may be double-quoted. */
TOVLAB_API tovlab_status tovlab_context_load_config(tovlab_context* ctx, const char* path);
/* The whole run configuration as JSON. */
TOVLAB_API tovlab_status tovlab_context_dump(tovlab_context* ctx, char** json);

/* row: "1".."10", "constant" or "sec33". A null params pointer means the
 * defaults, here and in every call below. */
TOVLAB_API tovlab_status tovlab_entry_open(tovlab_context* ctx, const char* row, const tovlab_params* params,
                                           tovlab_entry** out);
TOVLAB_API void tovlab_entry_close(tovlab_entry* entry);
TOVLAB_API tovlab_status tovlab_entry_eval(tovlab_context* ctx, const tovlab_entry* entry, tovlab_quantity q,
                                           double r, double* out);
/* Writes up to cap radii; *count receives the total number. */
TOVLAB_API tovlab_status tovlab_entry_singular_radii(tovlab_context* ctx, const tovlab_entry* entry, double* radii,
                                                     size_t cap, size_t* count);

/* rows: comma separated names or "all". *all_passed is set when non-null. */
TOVLAB_API tovlab_status tovlab_verify(tovlab_context* ctx, const char* rows, const tovlab_params* params,
                                       tovlab_format format, char** out, int* all_passed);
TOVLAB_API tovlab_status tovlab_classify(tovlab_context* ctx, const char* row, const tovlab_params* params,
                                         tovlab_format format, char** out);
/* r,value,flag CSV of the density on (domain_lo, 10]. */
TOVLAB_API tovlab_status tovlab_density_plot(tovlab_context* ctx, const char* row, const tovlab_params* params,
                                             char** csv);
/* parameter: "c1" or "c2"; the other constant is taken from params. */
TOVLAB_API tovlab_status tovlab_scan(tovlab_context* ctx, const char* row, const char* parameter, double lo, double hi,
                                     size_t steps, const tovlab_params* params, tovlab_format format, char** out);
TOVLAB_API tovlab_status tovlab_solve(tovlab_context* ctx, const char* row, const tovlab_params* params, double c0,
                                      tovlab_format format, char** out, int* passed);
TOVLAB_API tovlab_status tovlab_tails(tovlab_context* ctx, const char* rows, const tovlab_params* params,
                                      tovlab_format format, char** out);
TOVLAB_API tovlab_status tovlab_catalog_dump(tovlab_context* ctx, char** json);

TOVLAB_API tovlab_status tovlab_row1_analysis(tovlab_context* ctx, const tovlab_params* params, char** json);
TOVLAB_API tovlab_status tovlab_row2_singularity(tovlab_context* ctx, double c1, double* r);
/* Roots r1, r2, r3 of pi r^3 - c1 r + 1 as (re, im) pairs. */
TOVLAB_API tovlab_status tovlab_row7_roots(tovlab_context* ctx, double c1, double re[3], double im[3]);

TOVLAB_API void tovlab_free_string(char* s);

#ifdef __cplusplus
}
#endif

#endif
