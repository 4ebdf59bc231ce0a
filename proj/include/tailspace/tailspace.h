#ifndef TAILSPACE_TAILSPACE_H
#define TAILSPACE_TAILSPACE_H

#include <stddef.h>

#if defined(_WIN32)
#  if defined(TAILSPACE_BUILDING_LIBRARY)
#    define TAILSPACE_API __declspec(dllexport)
#  else
#    define TAILSPACE_API __declspec(dllimport)
#  endif
#else
#  define TAILSPACE_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ts_status {
  TS_OK = 0,
  TS_INVALID_ARGUMENT = 1,
  TS_DIMENSION_MISMATCH = 2,
  TS_DOMAIN = 3,
  TS_CONVERGENCE = 4,
  TS_IO = 5,
  TS_PARSE = 6,
  TS_INTERNAL = 7
} ts_status;

typedef enum ts_basis {
  TS_BASIS_HERMITE = 0,
  TS_BASIS_MONOMIAL = 1,
  TS_BASIS_ANALYTIC = 2
} ts_basis;

typedef struct ts_poly ts_poly;
typedef struct ts_rule ts_rule;
typedef struct ts_report ts_report;

/* Message of the last failed call on this thread; "" if none. */
TAILSPACE_API const char* ts_last_error(void);
TAILSPACE_API const char* ts_version(void);
/* Strings returned through char** out parameters. */
TAILSPACE_API void ts_string_free(char* s);

/* Probabilists' Hermite polynomial H_k(x). */
TAILSPACE_API ts_status ts_hermite_eval(int k, double x, double* out);

/* Polynomials use the shared JSON format:
   {"basis": "hermite"|"monomial"|"analytic", "dim": n,
    "terms": [{"alpha": [...], "re": r, "im": i}, ...]} */
TAILSPACE_API ts_status ts_poly_from_json(const char* json, ts_poly** out);
TAILSPACE_API ts_status ts_poly_load(const char* path, ts_poly** out);
TAILSPACE_API ts_status ts_poly_save(const ts_poly* poly, const char* path);
TAILSPACE_API ts_status ts_poly_to_json(const ts_poly* poly, char** out);
TAILSPACE_API ts_status ts_poly_dim(const ts_poly* poly, int* out);
TAILSPACE_API ts_status ts_poly_basis(const ts_poly* poly, ts_basis* out);
TAILSPACE_API ts_status ts_poly_degree(const ts_poly* poly, int* out);
TAILSPACE_API void ts_poly_free(ts_poly* poly);

/* Real bases take n coordinates; analytic polynomials take n complex
   coordinates as 2n doubles (re, im interleaved). */
TAILSPACE_API ts_status ts_poly_evaluate(const ts_poly* poly, const double* point,
                                         size_t len, double* re, double* im);
/* hermite <-> monomial; analytic only converts to itself. */
TAILSPACE_API ts_status ts_poly_convert(const ts_poly* poly, ts_basis target,
                                        ts_poly** out);
/* L^p norm under the Gaussian measure. achieved_tol and converged may be
   NULL. */
TAILSPACE_API ts_status ts_poly_lp_norm(const ts_poly* poly, double p, double tol,
                                        double* value, double* achieved_tol,
                                        int* converged);
/* <f, g> = integral of f conj(g); both in real bases or both analytic. */
TAILSPACE_API ts_status ts_poly_inner_product(const ts_poly* f, const ts_poly* g,
                                              double* re, double* im);

/* kind: "gauss_hermite", "tensor", "gauss_laguerre" or "polar_complex".
   sizes = {m} or {m_r, m_theta} for polar_complex. */
TAILSPACE_API ts_status ts_rule_build(const char* kind, const int* sizes,
                                      size_t n_sizes, int dim, ts_rule** out);
TAILSPACE_API ts_status ts_rule_size(const ts_rule* rule, size_t* out);
TAILSPACE_API ts_status ts_rule_dim(const ts_rule* rule, int* out);
/* point must hold ts_rule_dim() doubles. */
TAILSPACE_API ts_status ts_rule_node(const ts_rule* rule, size_t i, double* point,
                                     double* weight);
TAILSPACE_API ts_status ts_rule_write_csv(const ts_rule* rule, const char* path);
TAILSPACE_API void ts_rule_free(ts_rule* rule);

/* Runs one job described by a JSON object whose keys mirror the CLI flags. */
TAILSPACE_API ts_status ts_run(const char* config_json, ts_report** out);
/* format: "csv" or "json". */
TAILSPACE_API ts_status ts_report_render(const ts_report* report, const char* format,
                                         char** out);
TAILSPACE_API ts_status ts_report_write(const ts_report* report, const char* format,
                                        const char* path);
/* 1 when every check passed and every solve converged. */
TAILSPACE_API int ts_report_passed(const ts_report* report);
TAILSPACE_API ts_status ts_report_failures_json(const ts_report* report, char** out);
TAILSPACE_API void ts_report_free(ts_report* report);

#ifdef __cplusplus
}
#endif

#endif
