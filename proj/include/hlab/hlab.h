/*
 * hlab public C API.
 *
 * Conventions:
 *   - Every fallible call returns hlab_status; HLAB_OK (0) means success.
 *   - On failure the thread-local message from hlab_last_error() describes
 *     what went wrong; out-parameters are left untouched.
 *   - Objects are opaque handles created and destroyed by this library.
 *     Passing NULL where a handle is required yields HLAB_ERR_NULL.
 *   - Complex data crosses the boundary as interleaved doubles re0,im0,re1,...
 */
#ifndef HLAB_H
#define HLAB_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#define HLAB_API __attribute__((visibility("default")))

typedef enum hlab_status {
  HLAB_OK = 0,
  HLAB_ERR_NULL = 1,             /* a required handle/pointer was NULL */
  HLAB_ERR_INVALID_ARGUMENT = 2, /* malformed spec, bad size, bad config */
  HLAB_ERR_DOMAIN = 3,           /* precondition violated (domain/range) */
  HLAB_ERR_RUNTIME = 4,          /* I/O failures and internal errors */
} hlab_status;

/* Message describing this thread's most recent failure; never NULL. */
HLAB_API const char* hlab_last_error(void);
/* Library version as "major.minor.patch". */
HLAB_API const char* hlab_version(void);

/* ---- weight sequences --------------------------------------------------- */

typedef struct hlab_weights hlab_weights;

/* spec: bergman:a | dirichlet:l | sobolev | logrecip | powerlog
 *       | flipbergman:a:seed | constant | file:PATH                         */
HLAB_API hlab_status hlab_weights_create(const char* spec, hlab_weights** out);
HLAB_API hlab_status hlab_weights_invert(const hlab_weights* w, hlab_weights** out);
HLAB_API hlab_status hlab_weights_lift(const hlab_weights* w, hlab_weights** out);
HLAB_API hlab_status hlab_weights_w(const hlab_weights* w, long k, double* out);
HLAB_API hlab_status hlab_weights_beta(const hlab_weights* w, long k, double* out);
HLAB_API hlab_status hlab_weights_log_beta(const hlab_weights* w, long k,
                                           double* out);
/* Human-readable label; owned by the handle. NULL only if w is NULL. */
HLAB_API const char* hlab_weights_label(const hlab_weights* w);
HLAB_API void hlab_weights_free(hlab_weights* w);

/* ---- truncated power series --------------------------------------------- */

typedef struct hlab_series hlab_series;

/* spec: poly:c0,c1,... | mobius:re,im[,theta] | blaschke:re,im;re,im[,theta] */
HLAB_API hlab_status hlab_series_from_symbol(const char* spec, int order,
                                             hlab_series** out);
/* coeffs: 2*order doubles, interleaved re/im. */
HLAB_API hlab_status hlab_series_create(const double* coeffs, int order,
                                        hlab_series** out);
HLAB_API int hlab_series_order(const hlab_series* s); /* 0 if s is NULL */
/* Copies 2*order doubles into coeffs_out. */
HLAB_API hlab_status hlab_series_coeffs(const hlab_series* s, double* coeffs_out);
/* Truncated Cauchy product; both factors must have the same order. */
HLAB_API hlab_status hlab_series_mul(const hlab_series* f, const hlab_series* g,
                                     hlab_series** out);
/* f(g(z)); requires g(0) = 0. */
HLAB_API hlab_status hlab_series_compose(const hlab_series* f,
                                         const hlab_series* g,
                                         hlab_series** out);
HLAB_API hlab_status hlab_series_weighted_log_norm(const hlab_series* s,
                                                   const hlab_weights* w,
                                                   double* out);
HLAB_API void hlab_series_free(hlab_series* s);

/* ---- experiment runner --------------------------------------------------- */

typedef struct hlab_report hlab_report;

/* Runs a flat key=value config (see the CLI docs for keys). A report is
 * produced whenever the experiment executed, including negative verdicts;
 * inspect hlab_report_exit_code to distinguish them. */
HLAB_API hlab_status hlab_run_config_text(const char* text, hlab_report** out);
HLAB_API hlab_status hlab_run_config_file(const char* path, hlab_report** out);
/* Serialized JSON ("hlab-report/1", two-space indent, trailing newline). */
HLAB_API const char* hlab_report_json(const hlab_report* r);
/* CSV view; empty string when the command has none. */
HLAB_API const char* hlab_report_csv(const hlab_report* r);
/* 0 = success, 2 = negative mathematical verdict. */
HLAB_API int hlab_report_exit_code(const hlab_report* r);
HLAB_API void hlab_report_free(hlab_report* r);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* HLAB_H */
