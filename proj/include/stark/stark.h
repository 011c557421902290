#ifndef STARK_STARK_H
#define STARK_STARK_H

/* C interface to libstark: Stark shifts of hydrogen in parabolic quantum
 * numbers, exact Laguerre integrals, and numerical resonance energies.
 *
 * All functions returning stark_status set a thread-local message readable
 * through stark_last_error() on failure. Output strings are NUL-terminated;
 * when a buffer is too small STARK_ERR_BUFFER_TOO_SMALL is returned and
 * *needed (if non-null) receives the required size including the NUL.
 * A null buffer with buflen 0 is a size query and returns STARK_OK. */

#include <stddef.h>

#if defined(_WIN32)
#  if defined(STARK_BUILDING_LIBRARY)
#    define STARK_API __declspec(dllexport)
#  else
#    define STARK_API __declspec(dllimport)
#  endif
#else
#  define STARK_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum stark_status {
  STARK_OK = 0,
  STARK_ERR_INVALID_ARGUMENT = 1,
  STARK_ERR_NO_CONVERGENCE = 2,
  STARK_ERR_NODE_MISMATCH = 3,
  STARK_ERR_STATE_MISIDENTIFIED = 4,
  STARK_ERR_BARRIER_NOT_RESOLVED = 5,
  STARK_ERR_IO = 6,
  STARK_ERR_BUFFER_TOO_SMALL = 7,
  STARK_ERR_INTERNAL = 8
} stark_status;

STARK_API const char* stark_version(void);
STARK_API const char* stark_status_name(stark_status status);
/* Message of the last failure on this thread; empty after a success. */
STARK_API const char* stark_last_error(void);

/* Parabolic quantum numbers; m may be negative and is folded to |m|. */
typedef struct stark_state {
  int n1;
  int n2;
  int m;
} stark_state;

/* ---- perturbation ---------------------------------------------------- */

typedef struct stark_expansion stark_expansion;

typedef enum stark_coefficient {
  STARK_COEF_E0 = 0,
  STARK_COEF_E1 = 1,
  STARK_COEF_E2 = 2,
  STARK_COEF_E1_FROM_INTEGRALS = 3,
  STARK_COEF_E2_FROM_INTEGRALS = 4,
  STARK_COEF_E2_PRINTED_K = 5 /* diagnostic, disagrees with E2 */
} stark_coefficient;

STARK_API stark_status stark_expansion_create(stark_state state, stark_expansion** out);
STARK_API void stark_expansion_destroy(stark_expansion* e);
/* Exact rational as "p/q" in buf (may be null when buflen is 0) and its
 * nearest double in *value (may be null). */
STARK_API stark_status stark_expansion_coefficient(const stark_expansion* e, stark_coefficient which, char* buf,
                                                   size_t buflen, size_t* needed, double* value);
/* E0 + E1 F + E2 F^2 truncated at order 0, 1 or 2; requires F >= 0. */
STARK_API stark_status stark_expansion_energy(const stark_expansion* e, double field, int order, double* out);
STARK_API stark_status stark_principal_number(stark_state state, unsigned* out);

/* States of shell n (m >= 0), ordered by (m, n2). Writes min(capacity, count)
 * entries; *count receives n(n+1)/2. */
STARK_API stark_status stark_enumerate_states(unsigned n, stark_state* out, size_t capacity, size_t* count);

/* ---- Laguerre integrals and basis ------------------------------------ */

/* Z(alpha,k,k') = int x^alpha u_{k,m} u_{k',m} dx, exact. */
STARK_API stark_status stark_zint(unsigned alpha, unsigned k, unsigned kprime, unsigned m, char* buf, size_t buflen,
                                  size_t* needed, double* value);
/* Same integral by extended-precision Gauss-Laguerre quadrature. */
STARK_API stark_status stark_zint_quadrature(unsigned alpha, unsigned k, unsigned kprime, unsigned m, double* out);

/* n_points >= 2 samples of |u_{k,m}|^2 / ((k+m)!/k!) on [0, x_max]. */
STARK_API stark_status stark_basis_samples(unsigned k, unsigned m, double x_max, size_t n_points, double* x,
                                           double* density);
STARK_API stark_status stark_basis_node_count(unsigned k, unsigned m, unsigned* out);

/* ---- numerical reference --------------------------------------------- */

typedef struct stark_solver_options {
  double tol;                  /* on |mismatch|, default 1e-10 */
  int max_iter;                /* default 100 */
  double step;                 /* <= 0: 0.01 n */
  double x_max;                /* <= 0: max(30 n^2, 3 eta_b) */
  double weak_field_threshold; /* < 0: 1/(50 n^4) */
  double theta;                /* complex-scaling angle, default 0.3 */
  int has_initial_energy;
  double initial_energy_re;
  double initial_energy_im;
} stark_solver_options;

STARK_API void stark_solver_options_default(stark_solver_options* opts);

typedef struct stark_siegert_result {
  double energy_re;
  double energy_im;
  double beta1_re;
  double beta1_im;
  double beta2_re;
  double beta2_im;
  int iterations;
  double residual;
  int converged;
  unsigned n1_found;
  unsigned n2_found;
  int outgoing; /* 1: Siegert condition, 0: decaying (weak field) */
} stark_siegert_result;

/* opts may be null for defaults. */
STARK_API stark_status stark_siegert_energy(stark_state state, double field, const stark_solver_options* opts,
                                            stark_siegert_result* out);
/* Warm-started scan over ascending fields. statuses[i] holds the per-point
 * outcome; the call itself fails only on invalid arguments. */
STARK_API stark_status stark_energy_scan(stark_state state, const double* fields, size_t count,
                                         const stark_solver_options* opts, stark_siegert_result* results,
                                         stark_status* statuses);

/* ---- deviation benchmark --------------------------------------------- */

typedef enum stark_format { STARK_FORMAT_CSV = 0, STARK_FORMAT_JSON = 1 } stark_format;

#define STARK_PATH_MAX 4096

typedef struct stark_bench_config {
  stark_state state;
  unsigned shell;   /* > 0: all states of this n instead of `state` */
  double fmin;
  double fmax;      /* < 0: 0.1 (n=1), 0.01 (n=2), 1/(20 n^4) otherwise */
  unsigned steps;   /* number of grid points */
  int order;        /* 1 or 2 */
  double tol;
  int max_iter;
  stark_format format;
  int strict;
  char out_path[STARK_PATH_MAX]; /* empty: standard output */
} stark_bench_config;

STARK_API void stark_bench_config_default(stark_bench_config* cfg);
/* Overlays a key=value file (keys: state, shell, fmin, fmax, steps, order,
 * tol, max_iter, format, strict, out) onto *cfg. */
STARK_API stark_status stark_bench_config_load(const char* path, stark_bench_config* cfg);

typedef struct stark_bench stark_bench;

typedef struct stark_deviation_row {
  stark_state state;
  double field;
  double e_pert;
  double e_num_re;      /* NaN when not converged */
  double e_num_im;      /* NaN when not converged */
  double sigma_percent; /* NaN when not converged */
  int iterations;
  int converged;
} stark_deviation_row;

/* threads == 0 means one worker. */
STARK_API stark_status stark_bench_run(const stark_bench_config* cfg, unsigned threads, stark_bench** out);
STARK_API void stark_bench_destroy(stark_bench* b);
STARK_API size_t stark_bench_row_count(const stark_bench* b);
STARK_API stark_status stark_bench_row(const stark_bench* b, size_t index, stark_deviation_row* out);
/* max_sigma is NaN when no row converged. */
STARK_API stark_status stark_bench_summary(const stark_bench* b, double* max_sigma, int* all_converged,
                                           size_t* failures);
STARK_API stark_status stark_bench_render(const stark_bench* b, stark_format format, char* buf, size_t buflen,
                                          size_t* needed);
STARK_API stark_status stark_bench_write(const stark_bench* b, const char* path, stark_format format);

#ifdef __cplusplus
}
#endif

#endif
