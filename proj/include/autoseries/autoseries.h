#ifndef AUTOSERIES_AUTOSERIES_H
#define AUTOSERIES_AUTOSERIES_H

/* C interface to the autoseries library. All functions return an
 * autoseries_status; on failure the message is available from
 * autoseries_last_error(ctx) until the next call on the same context. */

#include <stddef.h>
#include <stdint.h>

#if defined(AUTOSERIES_BUILDING)
#define AUTOSERIES_API __attribute__((visibility("default")))
#else
#define AUTOSERIES_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum autoseries_status {
  AUTOSERIES_OK = 0,
  AUTOSERIES_DOMAIN = 1,   /* argument outside the mathematical domain */
  AUTOSERIES_RESOURCE = 2, /* tolerance not reachable within max_terms */
  AUTOSERIES_USAGE = 3,    /* unknown name, malformed input, bad handle */
  AUTOSERIES_IO = 4,
  AUTOSERIES_INTERNAL = 5
} autoseries_status;

typedef enum autoseries_method {
  AUTOSERIES_METHOD_AUTO = 0,
  AUTOSERIES_METHOD_NAIVE = 1,
  AUTOSERIES_METHOD_ODD = 2,
  AUTOSERIES_METHOD_FE = 3,
  AUTOSERIES_METHOD_EM = 4
} autoseries_method;

typedef enum autoseries_case {
  AUTOSERIES_CASE_ZERO = 0,
  AUTOSERIES_CASE_POWS = 1,
  AUTOSERIES_CASE_POWS_MINUS_2 = 2
} autoseries_case;

typedef enum autoseries_format {
  AUTOSERIES_FORMAT_JSON = 0,
  AUTOSERIES_FORMAT_CSV = 1,
  AUTOSERIES_FORMAT_TEXT = 2
} autoseries_format;

typedef struct autoseries_context autoseries_context;
typedef struct autoseries_report autoseries_report;

typedef struct autoseries_eval_result {
  long double value;
  long double abs_error_bound;
  uint64_t terms_used;
  autoseries_method method;
} autoseries_eval_result;

typedef struct autoseries_record {
  char identity_id[96];
  int has_s;
  long double s;
  long double eps;
  long double lhs;
  long double lhs_bound;
  long double rhs;
  long double rhs_bound;
  long double residual;
  int pass;
  int heuristic;
  uint64_t terms_used;
  double wall_time_seconds;
  char error[256];
} autoseries_record;

typedef struct autoseries_identity_info {
  char id[96];
  char description[256];
  /* 0: every s > 1, 1: one fixed s, 2: independent of s */
  int domain;
  long double fixed_s;
} autoseries_identity_info;

typedef struct autoseries_solution {
  long double k;
  long double l;
  autoseries_case which;
  long double s;
  long double lambda_residual;
  int usable; /* s > 1 */
} autoseries_solution;

AUTOSERIES_API const char* autoseries_version(void);
AUTOSERIES_API const char* autoseries_status_string(autoseries_status status);

AUTOSERIES_API autoseries_status autoseries_context_create(autoseries_context** out);
AUTOSERIES_API void autoseries_context_destroy(autoseries_context* ctx);
AUTOSERIES_API const char* autoseries_last_error(const autoseries_context* ctx);

AUTOSERIES_API autoseries_status autoseries_set_precision_bits(autoseries_context* ctx, int bits);
AUTOSERIES_API autoseries_status autoseries_get_precision_bits(const autoseries_context* ctx,
                                                               int* out);
AUTOSERIES_API autoseries_status autoseries_set_max_terms(autoseries_context* ctx, uint64_t n);
AUTOSERIES_API autoseries_status autoseries_get_max_terms(const autoseries_context* ctx,
                                                          uint64_t* out);
AUTOSERIES_API autoseries_status autoseries_set_depth(autoseries_context* ctx, int depth);
AUTOSERIES_API autoseries_status autoseries_get_depth(const autoseries_context* ctx, int* out);
AUTOSERIES_API autoseries_status autoseries_set_threads(autoseries_context* ctx, unsigned n);
AUTOSERIES_API autoseries_status autoseries_get_threads(const autoseries_context* ctx,
                                                        unsigned* out);

/* Parses "p/q", decimals, sqrt2, pi, sqrt(x) and + - * / ( ). */
AUTOSERIES_API autoseries_status autoseries_parse_real(autoseries_context* ctx, const char* text,
                                                       long double* out);
AUTOSERIES_API const char* autoseries_method_name(autoseries_method method);
AUTOSERIES_API autoseries_status autoseries_method_from_string(autoseries_context* ctx,
                                                               const char* name,
                                                               autoseries_method* out);

/* series: f, g, phi, gamma, delta, odd-epsilon, composite9, zeta, digitsum:b,
 * affine:a:b[:shifted] */
AUTOSERIES_API autoseries_status autoseries_eval(autoseries_context* ctx, const char* series,
                                                 long double s, long double eps,
                                                 autoseries_method method,
                                                 autoseries_eval_result* out);

AUTOSERIES_API size_t autoseries_registry_size(void);
AUTOSERIES_API autoseries_status autoseries_registry_entry(autoseries_context* ctx, size_t index,
                                                           autoseries_identity_info* out);
/* Resolves registry ids and shallit:b. */
AUTOSERIES_API autoseries_status autoseries_identity_info_for(autoseries_context* ctx,
                                                              const char* id,
                                                              autoseries_identity_info* out);
/* Default s values of an identity; *count receives the number written (<= capacity). */
AUTOSERIES_API autoseries_status autoseries_identity_default_s(autoseries_context* ctx,
                                                               const char* id, long double* out,
                                                               size_t capacity, size_t* count);

/* has_s = 0 verifies at the identity's own s (fixed or none). */
AUTOSERIES_API autoseries_status autoseries_verify(autoseries_context* ctx, const char* id,
                                                   int has_s, long double s, long double eps,
                                                   autoseries_record* out);
AUTOSERIES_API autoseries_status autoseries_verify_woods_robbins(autoseries_context* ctx,
                                                                 uint64_t terms, int pairing,
                                                                 autoseries_record* out);

AUTOSERIES_API autoseries_status autoseries_solve(autoseries_context* ctx, autoseries_case which,
                                                  long double k, long double l,
                                                  autoseries_solution* out);
/* Describes the identity minted from a solution; domain error when s <= 1. */
AUTOSERIES_API autoseries_status autoseries_mint(autoseries_context* ctx,
                                                 const autoseries_solution* solution,
                                                 autoseries_identity_info* out);
/* Mints the identity for a solution and verifies it at the solved s. */
AUTOSERIES_API autoseries_status autoseries_verify_solution(autoseries_context* ctx,
                                                            const autoseries_solution* solution,
                                                            long double eps,
                                                            autoseries_record* out);

/* Report documents. Batch verification fills a report in job order. */
AUTOSERIES_API autoseries_status autoseries_report_create(autoseries_context* ctx,
                                                          long double eps,
                                                          autoseries_report** out);
AUTOSERIES_API void autoseries_report_destroy(autoseries_report* report);
AUTOSERIES_API autoseries_status autoseries_report_add(autoseries_report* report,
                                                       const autoseries_record* record);
/* Queues (id, s) for autoseries_report_run; has_s = 0 means the identity's own s. */
AUTOSERIES_API autoseries_status autoseries_report_queue(autoseries_context* ctx,
                                                         autoseries_report* report,
                                                         const char* id, int has_s,
                                                         long double s);
/* Route for every series leaf left on automatic selection by the identity;
 * AUTOSERIES_METHOD_AUTO (the default) keeps the accelerated routes. */
AUTOSERIES_API autoseries_status autoseries_report_set_method(autoseries_report* report,
                                                              autoseries_method method);
/* Verifies all queued jobs (in parallel across identities) and appends the records. */
AUTOSERIES_API autoseries_status autoseries_report_run(autoseries_context* ctx,
                                                       autoseries_report* report);
AUTOSERIES_API size_t autoseries_report_size(const autoseries_report* report);
AUTOSERIES_API autoseries_status autoseries_report_record(const autoseries_report* report,
                                                          size_t index, autoseries_record* out);
AUTOSERIES_API autoseries_status autoseries_report_counts(const autoseries_report* report,
                                                          uint64_t* passed, uint64_t* failed);
/* Renders into a malloc'd NUL-terminated buffer released with autoseries_free. */
AUTOSERIES_API autoseries_status autoseries_report_render(autoseries_context* ctx,
                                                          const autoseries_report* report,
                                                          autoseries_format format, char** out);
AUTOSERIES_API autoseries_status autoseries_report_write(autoseries_context* ctx,
                                                         const autoseries_report* report,
                                                         const char* path,
                                                         autoseries_format format);
AUTOSERIES_API autoseries_status autoseries_report_read(autoseries_context* ctx, const char* path,
                                                        autoseries_report** out);
AUTOSERIES_API void autoseries_free(void* buffer);

#ifdef __cplusplus
}
#endif

#endif
