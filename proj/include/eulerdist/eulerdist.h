/* C interface to the Euler-operator solver, its pairing oracle and the
 * elementary-solution checks.
 *
 * Every object is an opaque handle released with its *_free function.
 * Functions that can fail return an ed_status; on failure the message of the
 * calling thread's last error is available from ed_last_error(). Strings
 * handed out through char** parameters are owned by the caller and must be
 * released with ed_string_free().
 */
#ifndef EULERDIST_H
#define EULERDIST_H

#include <stddef.h>

#if defined(_WIN32)
#define ED_API __declspec(dllexport)
#else
#define ED_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ed_status {
  ED_OK = 0,
  ED_ERR_DIMENSION = 1,
  ED_ERR_ZERO_POLYNOMIAL = 2,
  ED_ERR_UNSUPPORTED_INPUT = 3,
  ED_ERR_NOT_HYPERPLANE_SUPPORTED = 4,
  ED_ERR_ESCALATION_EXCEEDED = 5,
  ED_ERR_QUADRATURE_NO_CONVERGENCE = 6,
  ED_ERR_POLE_ON_GRID = 7,
  ED_ERR_DUPLICATE_LAMBDA = 8,
  ED_ERR_PARSE = 9,
  ED_ERR_COORDINATE_CONFLICT = 10,
  ED_ERR_INVALID_ARGUMENT = 11,
  ED_ERR_INTERNAL = 12
} ed_status;

typedef struct ed_poly ed_poly;
typedef struct ed_dist ed_dist;
typedef struct ed_solve_report ed_solve_report;
typedef struct ed_testfn ed_testfn;
typedef struct ed_oracle_report ed_oracle_report;
typedef struct ed_wagner_result ed_wagner_result;

ED_API const char* ed_version(void);

/* "DimensionError", "ParseError", ... */
ED_API const char* ed_status_name(ed_status status);
/* Message of the last failure on this thread; "" if none. */
ED_API const char* ed_last_error(void);
/* Byte offset of the last ParseError on this thread, or (size_t)-1. */
ED_API size_t ed_last_error_offset(void);
ED_API void ed_string_free(char* s);

/* Polynomials in t1..t9. dim 0 infers the dimension from the text. */
ED_API ed_status ed_poly_parse(const char* src, size_t dim, ed_poly** out);
ED_API ed_status ed_poly_format(const ed_poly* p, char** out);
ED_API size_t ed_poly_dim(const ed_poly* p);
/* -1 for the zero polynomial. */
ED_API int ed_poly_degree(const ed_poly* p);
ED_API void ed_poly_free(ed_poly* p);

/* Distribution expressions in x1..xd. */
ED_API ed_status ed_dist_parse(const char* src, size_t dim, ed_dist** out);
ED_API ed_status ed_dist_format(const ed_dist* e, char** out);
ED_API size_t ed_dist_dim(const ed_dist* e);
ED_API size_t ed_dist_term_count(const ed_dist* e);
/* out = P(theta) e */
ED_API ed_status ed_dist_apply(const ed_poly* p, const ed_dist* e, ed_dist** out);
ED_API ed_status ed_dist_equal(const ed_dist* a, const ed_dist* b, int* equal);
ED_API void ed_dist_free(ed_dist* e);

/* Particular solution of P(theta) U = T, verified exactly. */
ED_API ed_status ed_solve(const ed_poly* p, const ed_dist* t, int parallel, ed_solve_report** out);
ED_API ed_status ed_report_solution(const ed_solve_report* r, ed_dist** out);
ED_API int ed_report_verified(const ed_solve_report* r);
ED_API unsigned ed_report_escalation_depth(const ed_solve_report* r);
ED_API size_t ed_report_terms_dispatched(const ed_solve_report* r);
ED_API size_t ed_report_trace_length(const ed_solve_report* r);
ED_API ed_status ed_report_trace_step(const ed_solve_report* r, size_t i, char** out);
ED_API void ed_report_free(ed_solve_report* r);

ED_API ed_status ed_verify(const ed_poly* p, const ed_dist* u, const ed_dist* t, int* verified);

/* Test functions "gauss(<poly in x>; c=...; w=...)". */
ED_API ed_status ed_testfn_parse(const char* src, size_t dim, ed_testfn** out);
ED_API ed_status ed_testfn_format(const ed_testfn* f, char** out);
ED_API size_t ed_testfn_dim(const ed_testfn* f);
ED_API void ed_testfn_free(ed_testfn* f);

/* <e, phi> by quadrature; error may be NULL. */
ED_API ed_status ed_pair(const ed_dist* e, const ed_testfn* phi, double tol, double* value, double* error);

/* Adjoint identity <theta_j A, phi> + <A, (x_j phi)'> over the generator atoms,
 * the standard test functions in dimension dim and every coordinate j. */
ED_API ed_status ed_oracle_run(size_t dim, double tol, ed_oracle_report** out);
ED_API size_t ed_oracle_count(const ed_oracle_report* r);
ED_API ed_status ed_oracle_entry(const ed_oracle_report* r, size_t i, char** atom, size_t* function,
                                 size_t* coordinate, double* residual);
ED_API double ed_oracle_max_residual(const ed_oracle_report* r);
ED_API void ed_oracle_free(ed_oracle_report* r);

/* |<E, P(-d) phi> - phi(0)| for the elementary solution of P(d). */
ED_API ed_status ed_wagner_check(const ed_poly* p, const ed_testfn* phi, size_t n, double cutoff,
                                 ed_wagner_result** out);
ED_API double ed_wagner_residual(const ed_wagner_result* r);
ED_API double ed_wagner_pairing(const ed_wagner_result* r);
ED_API double ed_wagner_phi_at_zero(const ed_wagner_result* r);
ED_API double ed_wagner_roundoff_floor(const ed_wagner_result* r);
ED_API double ed_wagner_grid_offset(const ed_wagner_result* r);
ED_API unsigned ed_wagner_order(const ed_wagner_result* r);
ED_API size_t ed_wagner_dim(const ed_wagner_result* r);
ED_API long ed_wagner_eta(const ed_wagner_result* r, size_t i);
/* lambda_i and a_i, i <= order, as exact rational text. */
ED_API ed_status ed_wagner_lambda(const ed_wagner_result* r, size_t i, char** out);
ED_API ed_status ed_wagner_coefficient(const ed_wagner_result* r, size_t i, char** out);
ED_API void ed_wagner_free(ed_wagner_result* r);

#ifdef __cplusplus
}
#endif

#endif
