/* Exercises the C interface from plain C. */
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "eulerdist/eulerdist.h"

static int failures = 0;

#define EXPECT(cond)                                              \
  do {                                                            \
    if (!(cond)) {                                                \
      fprintf(stderr, "%s:%d: check failed: %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                 \
    }                                                             \
  } while (0)

static void solve_roundtrip(void) {
  ed_poly* p = NULL;
  ed_dist* t = NULL;
  ed_solve_report* r = NULL;
  ed_dist* u = NULL;
  char* text = NULL;
  int ok = 0;

  EXPECT(ed_poly_parse("t1+1", 1, &p) == ED_OK);
  EXPECT(ed_dist_parse("delta(x1,0)", 1, &t) == ED_OK);
  EXPECT(ed_solve(p, t, 0, &r) == ED_OK);
  EXPECT(ed_report_verified(r) == 1);
  EXPECT(ed_report_escalation_depth(r) == 0);
  EXPECT(ed_report_trace_length(r) >= 1);
  EXPECT(ed_report_solution(r, &u) == ED_OK);
  EXPECT(ed_dist_format(u, &text) == ED_OK);
  EXPECT(text && strcmp(text, "x1^-1*H(x1)") == 0);
  ed_string_free(text);
  EXPECT(ed_verify(p, u, t, &ok) == ED_OK && ok == 1);

  ed_dist* applied = NULL;
  int same = 0;
  EXPECT(ed_dist_apply(p, u, &applied) == ED_OK);
  EXPECT(ed_dist_equal(applied, t, &same) == ED_OK && same == 1);

  ed_dist_free(applied);
  ed_dist_free(u);
  ed_report_free(r);
  ed_dist_free(t);
  ed_poly_free(p);
}

static void errors(void) {
  ed_poly* p = NULL;
  ed_dist* e = NULL;
  EXPECT(ed_poly_parse("t1*(t1+1", 0, &p) == ED_ERR_PARSE);
  EXPECT(p == NULL);
  EXPECT(ed_last_error_offset() == 8);
  EXPECT(strlen(ed_last_error()) > 0);
  EXPECT(strcmp(ed_status_name(ED_ERR_PARSE), "ParseError") == 0);
  EXPECT(ed_dist_parse("delta(x1,0)*H(x1)", 1, &e) == ED_ERR_COORDINATE_CONFLICT);
  EXPECT(ed_dist_parse("x3", 2, &e) == ED_ERR_DIMENSION);
  EXPECT(ed_poly_parse(NULL, 1, &p) == ED_ERR_INVALID_ARGUMENT);

  ed_poly* zero = NULL;
  ed_dist* t = NULL;
  ed_solve_report* r = NULL;
  EXPECT(ed_poly_parse("0", 1, &zero) == ED_OK);
  EXPECT(ed_poly_degree(zero) == -1);
  EXPECT(ed_dist_parse("delta(x1,0)", 1, &t) == ED_OK);
  EXPECT(ed_solve(zero, t, 0, &r) == ED_ERR_ZERO_POLYNOMIAL);
  ed_poly_free(zero);
  ed_dist_free(t);

  /* Releasing NULL is harmless. */
  ed_poly_free(NULL);
  ed_dist_free(NULL);
  ed_string_free(NULL);
}

static void pairing_and_oracle(void) {
  ed_dist* h = NULL;
  ed_testfn* g = NULL;
  double v = 0, err = 0;
  char* text = NULL;
  EXPECT(ed_dist_parse("H(x1)", 1, &h) == ED_OK);
  EXPECT(ed_testfn_parse("gauss(1)", 1, &g) == ED_OK);
  EXPECT(ed_testfn_dim(g) == 1);
  EXPECT(ed_testfn_format(g, &text) == ED_OK);
  ed_string_free(text);
  EXPECT(ed_pair(h, g, 1e-12, &v, &err) == ED_OK);
  EXPECT(v > 0.886226925 && v < 0.886226926);
  ed_testfn_free(g);
  ed_dist_free(h);

  ed_oracle_report* o = NULL;
  EXPECT(ed_oracle_run(1, 1e-6, &o) == ED_OK);
  EXPECT(ed_oracle_count(o) == 770);
  EXPECT(ed_oracle_max_residual(o) <= 1e-6);
  char* atom = NULL;
  size_t fn = 99, coord = 99;
  double res = -1;
  EXPECT(ed_oracle_entry(o, 0, &atom, &fn, &coord, &res) == ED_OK);
  EXPECT(atom != NULL && fn == 0 && coord == 0 && res >= 0);
  ed_string_free(atom);
  EXPECT(ed_oracle_entry(o, 770, &atom, &fn, &coord, &res) == ED_ERR_INVALID_ARGUMENT);
  ed_oracle_free(o);
}

static void wagner(void) {
  ed_poly* p = NULL;
  ed_testfn* g = NULL;
  ed_wagner_result* w = NULL;
  char* text = NULL;
  EXPECT(ed_poly_parse("t1^2+t2^2-1", 2, &p) == ED_OK);
  EXPECT(ed_testfn_parse("gauss(1)", 2, &g) == ED_OK);
  EXPECT(ed_wagner_check(p, g, 128, 40.0, &w) == ED_OK);
  EXPECT(ed_wagner_residual(w) <= 1e-3);
  EXPECT(ed_wagner_order(w) == 2);
  EXPECT(ed_wagner_dim(w) == 2);
  EXPECT(ed_wagner_eta(w, 0) == 1 && ed_wagner_eta(w, 1) == 0);
  EXPECT(ed_wagner_coefficient(w, 1, &text) == ED_OK && strcmp(text, "-1") == 0);
  ed_string_free(text);
  EXPECT(ed_wagner_lambda(w, 2, &text) == ED_OK && strcmp(text, "3") == 0);
  ed_string_free(text);
  EXPECT(ed_wagner_lambda(w, 3, &text) == ED_ERR_INVALID_ARGUMENT);
  ed_wagner_free(w);
  ed_testfn_free(g);
  ed_poly_free(p);
}

int main(void) {
  solve_roundtrip();
  errors();
  pairing_and_oracle();
  wagner();
  if (failures) {
    fprintf(stderr, "%d C API checks failed\n", failures);
    return 1;
  }
  printf("C API checks passed (library %s)\n", ed_version());
  return 0;
}
