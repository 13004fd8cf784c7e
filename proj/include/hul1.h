/* hul1 - L1 Hyers-Ulam stability of constant-coefficient linear ODEs.
 *
 * C interface of the shared library. All functions return HUL1_OK (0) or a
 * status code; hul1_last_error() holds a human-readable message for the most
 * recent failure on the calling thread. Strings returned through char** are
 * heap-allocated and must be released with hul1_string_free(); handles with
 * their matching *_free().
 *
 * Status codes 0..4 coincide with the CLI exit-code contract.
 */
#ifndef HUL1_H
#define HUL1_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

enum hul1_status {
  HUL1_OK = 0,
  HUL1_ERR_PARSE = 1,           /* malformed JSON/CSV */
  HUL1_ERR_NOT_HYPERBOLIC = 2,  /* root too close to the imaginary axis */
  HUL1_ERR_BOUND_VIOLATED = 3,  /* reserved for the CLI; never returned here */
  HUL1_ERR_ROUGH_CANDIDATE = 4, /* jumps below order n-1 exceed 1e-8 */
  HUL1_ERR_NUMERIC = 5,         /* non-convergence / ill-conditioning / grids */
  HUL1_ERR_INVALID = 6          /* bad argument */
};

const char* hul1_status_name(int status);
const char* hul1_last_error(void);
void hul1_string_free(char* s);

/* -------- opaque handles -------- */
typedef struct hul1_poly hul1_poly;         /* characteristic polynomial */
typedef struct hul1_function hul1_function; /* closed-form exp-poly function */
typedef struct hul1_samples hul1_samples;   /* uniform complex samples */
typedef struct hul1_green hul1_green;       /* Green's function + constant */

/* -------- polynomials -------- */
int hul1_poly_parse(const char* json, hul1_poly** out);
void hul1_poly_free(hul1_poly* p);
int hul1_poly_degree(const hul1_poly* p);

/* -------- closed-form functions -------- */
int hul1_function_parse(const char* json, hul1_function** out);
void hul1_function_free(hul1_function* f);
int hul1_function_to_json(const hul1_function* f, char** out_json);
int hul1_function_l1_norm(const hul1_function* f, double* out);
/* Samples f on the grid [-T, T) with N points (N a power of two >= 8) and
 * renders the CSV (header "t,re,im"). */
int hul1_function_sample_csv(const hul1_function* f, double grid_T, int grid_N,
                             char** out_csv);

/* -------- sampled functions -------- */
/* Parses a grid sidecar {"T":...,"N":...}. */
int hul1_grid_parse(const char* json, double* out_T, int* out_N);
int hul1_samples_parse_csv(const char* csv, double grid_T, int grid_N,
                           hul1_samples** out);
void hul1_samples_free(hul1_samples* s);
int hul1_samples_to_csv(const hul1_samples* s, char** out_csv);
int hul1_samples_l1_norm(const hul1_samples* s, double* out);

/* -------- Green's function / stability constant -------- */
int hul1_green_build(const hul1_poly* p, double axis_tol, hul1_green** out);
void hul1_green_free(hul1_green* g);
int hul1_green_to_json(const hul1_green* g, char** out_json);
int hul1_green_constant(const hul1_green* g, double* out_M);
/* One call for `stability`: roots, verdict, kernel terms and M as JSON.
 * Returns HUL1_ERR_NOT_HYPERBOLIC (still filling out_json with the verdict
 * and witness) when the polynomial is rejected. */
int hul1_stability_report(const char* poly_json, double axis_tol,
                          char** out_json);

/* -------- solve / residual / verify -------- */
int hul1_solve_closed(const hul1_poly* p, const hul1_function* f,
                      double axis_tol, hul1_function** out);
int hul1_solve_sampled(const hul1_poly* p, const hul1_samples* f,
                       double axis_tol, hul1_samples** out);
int hul1_residual_norm_closed(const hul1_poly* p, const hul1_function* f,
                              const hul1_function* y, double* out_norm);
/* Sampled defect via iterated 4th-order stencils (outermost 2n samples
 * excluded from the norm). */
int hul1_residual_norm_sampled(const hul1_poly* p, const hul1_samples* f,
                               const hul1_samples* y, double* out_norm);

/* Verification reports are JSON (schemas/stability_report.schema.json);
 * out_satisfied receives 0/1. Exactly one of f_closed/f_sampled must be
 * non-NULL. */
int hul1_verify_closed(const hul1_poly* p, const hul1_function* f,
                       const hul1_function* y, double axis_tol, double slack,
                       int* out_satisfied, char** out_report_json);
int hul1_verify_sampled(const hul1_poly* p, const hul1_function* f_closed,
                        const hul1_samples* f_sampled, const hul1_samples* y,
                        double axis_tol, double slack, int* out_satisfied,
                        char** out_report_json);

/* -------- instability probes (y' - iy = 0) -------- */
int hul1_probe_paper(double eps, char** out_json);
int hul1_probe_slow(double eps, double T, char** out_json);
/* Sweeps T over `Ts` (nT >= 1); JSON array plus a CSV with columns
 * parameter,residual,distance,ratio. Either output pointer may be NULL. */
int hul1_probe_slow_sweep(double eps, const double* Ts, int nT,
                          char** out_json, char** out_csv);

#ifdef __cplusplus
}
#endif

#endif /* HUL1_H */
