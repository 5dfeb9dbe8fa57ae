#include "eulerdist/eulerdist.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <limits>
#include <memory>
#include <new>
#include <string>

#include "eulerdist/error.hpp"
#include "eulerdist/pairing.hpp"
#include "eulerdist/solver.hpp"
#include "eulerdist/text.hpp"
#include "eulerdist/theta.hpp"
#include "eulerdist/wagner.hpp"

struct ed_poly {
  eulerdist::Polynomial value;
};
struct ed_dist {
  eulerdist::DistExpr value;
};
struct ed_solve_report {
  eulerdist::SolveReport value;
};
struct ed_testfn {
  eulerdist::GaussPoly value;
};
struct ed_oracle_entry_data {
  std::string atom;
  std::size_t function;
  std::size_t coordinate;
  double residual;
};
struct ed_oracle_report {
  std::vector<ed_oracle_entry_data> entries;
  double max_residual = 0.0;
};
struct ed_wagner_result {
  eulerdist::WagnerParams params;
  eulerdist::MeCheck check;
  std::size_t dim;
};

namespace {

constexpr std::size_t kNoOffset = static_cast<std::size_t>(-1);

thread_local std::string last_error;
thread_local std::size_t last_offset = kNoOffset;

ed_status status_of(eulerdist::ErrorKind kind) {
  using eulerdist::ErrorKind;
  switch (kind) {
    case ErrorKind::Dimension: return ED_ERR_DIMENSION;
    case ErrorKind::ZeroPolynomial: return ED_ERR_ZERO_POLYNOMIAL;
    case ErrorKind::UnsupportedInput: return ED_ERR_UNSUPPORTED_INPUT;
    case ErrorKind::TermNotHyperplaneSupported: return ED_ERR_NOT_HYPERPLANE_SUPPORTED;
    case ErrorKind::EscalationExceeded: return ED_ERR_ESCALATION_EXCEEDED;
    case ErrorKind::QuadratureNoConvergence: return ED_ERR_QUADRATURE_NO_CONVERGENCE;
    case ErrorKind::PoleOnGrid: return ED_ERR_POLE_ON_GRID;
    case ErrorKind::DuplicateLambda: return ED_ERR_DUPLICATE_LAMBDA;
    case ErrorKind::Parse: return ED_ERR_PARSE;
    case ErrorKind::CoordinateConflict: return ED_ERR_COORDINATE_CONFLICT;
    case ErrorKind::InvalidArgument: return ED_ERR_INVALID_ARGUMENT;
    case ErrorKind::Internal: return ED_ERR_INTERNAL;
  }
  return ED_ERR_INTERNAL;
}

ed_status fail(ed_status s, const std::string& message) {
  last_error = message;
  last_offset = kNoOffset;
  return s;
}

// Runs f, translating exceptions into status codes.
template <class F>
ed_status guarded(F&& f) {
  try {
    last_error.clear();
    last_offset = kNoOffset;
    f();
    return ED_OK;
  } catch (const eulerdist::ParseError& e) {
    last_error = e.what();
    last_offset = e.offset();
    return ED_ERR_PARSE;
  } catch (const eulerdist::Error& e) {
    return fail(status_of(e.kind()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(ED_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(ED_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(ED_ERR_INTERNAL, "unknown failure");
  }
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

#define ED_REQUIRE(cond)                                                   \
  do {                                                                     \
    if (!(cond)) return fail(ED_ERR_INVALID_ARGUMENT, "null argument: " #cond); \
  } while (0)

std::string describe_atom(const eulerdist::Atom1D& a) {
  if (a.is_delta()) return "Delta(" + std::to_string(a.k) + ")";
  return "MonLog(" + std::to_string(a.n) + "," + std::to_string(a.p) + "," + (a.sign == 1 ? "+" : "-") + ")";
}

}  // namespace

extern "C" {

const char* ed_version(void) { return "0.1.0"; }

const char* ed_status_name(ed_status status) {
  using eulerdist::ErrorKind;
  switch (status) {
    case ED_OK: return "OK";
    case ED_ERR_DIMENSION: return eulerdist::to_string(ErrorKind::Dimension);
    case ED_ERR_ZERO_POLYNOMIAL: return eulerdist::to_string(ErrorKind::ZeroPolynomial);
    case ED_ERR_UNSUPPORTED_INPUT: return eulerdist::to_string(ErrorKind::UnsupportedInput);
    case ED_ERR_NOT_HYPERPLANE_SUPPORTED: return eulerdist::to_string(ErrorKind::TermNotHyperplaneSupported);
    case ED_ERR_ESCALATION_EXCEEDED: return eulerdist::to_string(ErrorKind::EscalationExceeded);
    case ED_ERR_QUADRATURE_NO_CONVERGENCE: return eulerdist::to_string(ErrorKind::QuadratureNoConvergence);
    case ED_ERR_POLE_ON_GRID: return eulerdist::to_string(ErrorKind::PoleOnGrid);
    case ED_ERR_DUPLICATE_LAMBDA: return eulerdist::to_string(ErrorKind::DuplicateLambda);
    case ED_ERR_PARSE: return eulerdist::to_string(ErrorKind::Parse);
    case ED_ERR_COORDINATE_CONFLICT: return eulerdist::to_string(ErrorKind::CoordinateConflict);
    case ED_ERR_INVALID_ARGUMENT: return eulerdist::to_string(ErrorKind::InvalidArgument);
    case ED_ERR_INTERNAL: return eulerdist::to_string(ErrorKind::Internal);
  }
  return "Unknown";
}

const char* ed_last_error(void) { return last_error.c_str(); }
size_t ed_last_error_offset(void) { return last_offset; }
void ed_string_free(char* s) { std::free(s); }

// Polynomials ---------------------------------------------------------------

ed_status ed_poly_parse(const char* src, size_t dim, ed_poly** out) {
  ED_REQUIRE(src && out);
  return guarded([&] { *out = new ed_poly{eulerdist::parse_poly(src, dim)}; });
}
ed_status ed_poly_format(const ed_poly* p, char** out) {
  ED_REQUIRE(p && out);
  return guarded([&] { *out = copy_string(eulerdist::format_poly(p->value)); });
}
size_t ed_poly_dim(const ed_poly* p) { return p ? p->value.dim() : 0; }
int ed_poly_degree(const ed_poly* p) { return p ? p->value.degree() : -1; }
void ed_poly_free(ed_poly* p) { delete p; }

// Distributions -------------------------------------------------------------

ed_status ed_dist_parse(const char* src, size_t dim, ed_dist** out) {
  ED_REQUIRE(src && out);
  return guarded([&] { *out = new ed_dist{eulerdist::parse_dist(src, dim)}; });
}
ed_status ed_dist_format(const ed_dist* e, char** out) {
  ED_REQUIRE(e && out);
  return guarded([&] { *out = copy_string(eulerdist::format_dist(e->value)); });
}
size_t ed_dist_dim(const ed_dist* e) { return e ? e->value.dim() : 0; }
size_t ed_dist_term_count(const ed_dist* e) { return e ? e->value.size() : 0; }
ed_status ed_dist_apply(const ed_poly* p, const ed_dist* e, ed_dist** out) {
  ED_REQUIRE(p && e && out);
  return guarded([&] {
    if (p->value.dim() != e->value.dim())
      throw eulerdist::Error(eulerdist::ErrorKind::Dimension, "polynomial and expression dimensions differ");
    *out = new ed_dist{eulerdist::apply_polynomial(p->value, e->value)};
  });
}
ed_status ed_dist_equal(const ed_dist* a, const ed_dist* b, int* equal) {
  ED_REQUIRE(a && b && equal);
  return guarded([&] {
    if (a->value.dim() != b->value.dim())
      throw eulerdist::Error(eulerdist::ErrorKind::Dimension, "expression dimensions differ");
    *equal = eulerdist::equal(a->value, b->value) ? 1 : 0;
  });
}
void ed_dist_free(ed_dist* e) { delete e; }

// Solver --------------------------------------------------------------------

ed_status ed_solve(const ed_poly* p, const ed_dist* t, int parallel, ed_solve_report** out) {
  ED_REQUIRE(p && t && out);
  return guarded([&] {
    eulerdist::SolveOptions options;
    options.parallel_terms = parallel != 0;
    *out = new ed_solve_report{eulerdist::solve(p->value, t->value, options)};
  });
}
ed_status ed_report_solution(const ed_solve_report* r, ed_dist** out) {
  ED_REQUIRE(r && out);
  return guarded([&] { *out = new ed_dist{r->value.solution}; });
}
int ed_report_verified(const ed_solve_report* r) { return r && r->value.verified ? 1 : 0; }
unsigned ed_report_escalation_depth(const ed_solve_report* r) { return r ? r->value.escalation_depth : 0; }
size_t ed_report_terms_dispatched(const ed_solve_report* r) { return r ? r->value.terms_dispatched : 0; }
size_t ed_report_trace_length(const ed_solve_report* r) { return r ? r->value.recursion_trace.size() : 0; }
ed_status ed_report_trace_step(const ed_solve_report* r, size_t i, char** out) {
  ED_REQUIRE(r && out);
  if (i >= r->value.recursion_trace.size()) return fail(ED_ERR_INVALID_ARGUMENT, "trace index out of range");
  return guarded([&] { *out = copy_string(r->value.recursion_trace[i].describe()); });
}
void ed_report_free(ed_solve_report* r) { delete r; }

ed_status ed_verify(const ed_poly* p, const ed_dist* u, const ed_dist* t, int* verified) {
  ED_REQUIRE(p && u && t && verified);
  return guarded([&] {
    if (p->value.dim() != u->value.dim() || u->value.dim() != t->value.dim())
      throw eulerdist::Error(eulerdist::ErrorKind::Dimension, "P, U and T must share one dimension");
    *verified = eulerdist::verify(p->value, u->value, t->value) ? 1 : 0;
  });
}

// Test functions and pairings ---------------------------------------------------

ed_status ed_testfn_parse(const char* src, size_t dim, ed_testfn** out) {
  ED_REQUIRE(src && out);
  return guarded([&] { *out = new ed_testfn{eulerdist::parse_testfn(src, dim)}; });
}
ed_status ed_testfn_format(const ed_testfn* f, char** out) {
  ED_REQUIRE(f && out);
  return guarded([&] { *out = copy_string(eulerdist::format_testfn(f->value)); });
}
size_t ed_testfn_dim(const ed_testfn* f) { return f ? f->value.dim() : 0; }
void ed_testfn_free(ed_testfn* f) { delete f; }

ed_status ed_pair(const ed_dist* e, const ed_testfn* phi, double tol, double* value, double* error) {
  ED_REQUIRE(e && phi && value);
  return guarded([&] {
    const auto r = eulerdist::pair_with_error(e->value, phi->value, tol);
    *value = r.value;
    if (error) *error = r.error;
  });
}

ed_status ed_oracle_run(size_t dim, double tol, ed_oracle_report** out) {
  ED_REQUIRE(out);
  return guarded([&] {
    if (dim == 0) throw eulerdist::Error(eulerdist::ErrorKind::Dimension, "dimension must be positive");
    if (!(tol > 0)) throw eulerdist::Error(eulerdist::ErrorKind::InvalidArgument, "tolerance must be positive");
    auto report = std::make_unique<ed_oracle_report>();
    const auto suite = eulerdist::standard_suite(dim);
    for (const auto& atom : eulerdist::adjoint_generator_suite()) {
      for (std::size_t f = 0; f < suite.size(); ++f) {
        for (std::size_t j = 0; j < dim; ++j) {
          // The quadrature target sits two orders below the pass threshold.
          const double r = eulerdist::adjoint_check(atom, suite[f], j, 1e-2 * tol);
          report->entries.push_back({describe_atom(atom), f, j, r});
          report->max_residual = std::max(report->max_residual, r);
        }
      }
    }
    *out = report.release();
  });
}
size_t ed_oracle_count(const ed_oracle_report* r) { return r ? r->entries.size() : 0; }
ed_status ed_oracle_entry(const ed_oracle_report* r, size_t i, char** atom, size_t* function, size_t* coordinate,
                          double* residual) {
  ED_REQUIRE(r);
  if (i >= r->entries.size()) return fail(ED_ERR_INVALID_ARGUMENT, "entry index out of range");
  return guarded([&] {
    const auto& e = r->entries[i];
    if (atom) *atom = copy_string(e.atom);
    if (function) *function = e.function;
    if (coordinate) *coordinate = e.coordinate;
    if (residual) *residual = e.residual;
  });
}
double ed_oracle_max_residual(const ed_oracle_report* r) { return r ? r->max_residual : 0.0; }
void ed_oracle_free(ed_oracle_report* r) { delete r; }

// Elementary solution ---------------------------------------------------------

ed_status ed_wagner_check(const ed_poly* p, const ed_testfn* phi, size_t n, double cutoff, ed_wagner_result** out) {
  ED_REQUIRE(p && phi && out);
  return guarded([&] {
    eulerdist::FourierGrid grid;
    grid.n = n;
    grid.cutoff = cutoff;
    auto r = std::make_unique<ed_wagner_result>();
    r->params = eulerdist::wagner_params(p->value);
    r->check = eulerdist::me_check(p->value, phi->value, grid);
    r->dim = p->value.dim();
    *out = r.release();
  });
}
double ed_wagner_residual(const ed_wagner_result* r) { return r ? r->check.residual : 0.0; }
double ed_wagner_pairing(const ed_wagner_result* r) { return r ? r->check.pairing : 0.0; }
double ed_wagner_phi_at_zero(const ed_wagner_result* r) { return r ? r->check.phi_at_zero : 0.0; }
double ed_wagner_roundoff_floor(const ed_wagner_result* r) { return r ? r->check.roundoff_floor : 0.0; }
double ed_wagner_grid_offset(const ed_wagner_result* r) { return r ? r->check.detail.offset_cells : 0.0; }
unsigned ed_wagner_order(const ed_wagner_result* r) { return r ? r->params.m : 0; }
size_t ed_wagner_dim(const ed_wagner_result* r) { return r ? r->dim : 0; }
long ed_wagner_eta(const ed_wagner_result* r, size_t i) {
  return (r && i < r->params.eta.size()) ? r->params.eta[i] : 0;
}
ed_status ed_wagner_lambda(const ed_wagner_result* r, size_t i, char** out) {
  ED_REQUIRE(r && out);
  if (i >= r->params.lambda.size()) return fail(ED_ERR_INVALID_ARGUMENT, "lambda index out of range");
  return guarded([&] { *out = copy_string(eulerdist::to_string(r->params.lambda[i])); });
}
ed_status ed_wagner_coefficient(const ed_wagner_result* r, size_t i, char** out) {
  ED_REQUIRE(r && out);
  if (i >= r->params.a.size()) return fail(ED_ERR_INVALID_ARGUMENT, "coefficient index out of range");
  return guarded([&] { *out = copy_string(eulerdist::to_string(r->params.a[i])); });
}
void ed_wagner_free(ed_wagner_result* r) { delete r; }

}  // extern "C"
