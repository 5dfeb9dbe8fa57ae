#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "eulerdist/dist.hpp"
#include "eulerdist/polynomial.hpp"

namespace eulerdist {

enum class TraceKind {
  /// z_j := value reduced the problem by one dimension.
  Substitution,
  /// (z_j + value)^power was split off P.
  FactorExtraction,
  /// One application of the resonant one-dimensional solve in coordinate j.
  Resonant1D,
};

struct TraceStep {
  TraceKind kind;
  /// 0-based coordinate in the caller's original numbering.
  std::size_t coordinate;
  Rational value;
  unsigned power = 0;

  /// e.g. "substitute z1 := -1", "factor (z2 + 3)^2", "resonant_1d x1 k=2".
  std::string describe() const;
};

/// One continuous (quadrant phase) step: log bump used vs. vanishing order.
struct EscalationRecord {
  unsigned bump;
  unsigned vanishing_order;
};

struct SolveReport {
  DistExpr solution;
  bool verified = false;
  /// Max log bump used in any continuous step.
  unsigned escalation_depth = 0;
  std::vector<TraceStep> recursion_trace;
  std::vector<EscalationRecord> escalations;
  /// Right-hand side terms dispatched over the whole recursion, including
  /// delta-supported residuals and re-dispatches after factor extraction.
  std::size_t terms_dispatched = 0;
};

struct SolveOptions {
  /// Solve the top-level terms concurrently. The result is identical to the
  /// sequential run.
  bool parallel_terms = false;
};

/// Particular solution U of P(theta) U = T, verified exactly before return.
SolveReport solve(const Polynomial& p, const DistExpr& t, const SolveOptions& options = {});

struct ContinuousStep {
  DistExpr partial;
  /// t - P(theta) partial in the full calculus; delta-supported.
  DistExpr residual;
  unsigned bump = 0;
  unsigned vanishing_order = 0;
};

/// Quadrant phase for a delta-free term. Solves modulo delta-supported
/// distributions on the space of log powers of total degree <= |p| + bump,
/// escalating bump from 0 up to the vanishing order of P at the term's
/// eigenvalue.
ContinuousStep solve_continuous_term(const Polynomial& p, const TensorTerm& t);

/// Hyperplane phase for a term carrying a Delta factor.
DistExpr solve_delta_term(const Polynomial& p, const TensorTerm& t);

/// W with (theta_j + k + 1) W = v. j is 0-based.
DistExpr resonant_1d(std::size_t j, unsigned k, const DistExpr& v);

bool verify(const Polynomial& p, const DistExpr& u, const DistExpr& t);

/// Upper bound on the trace length checked by solve().
std::size_t trace_cap(const Polynomial& p, std::size_t terms_dispatched);

}  // namespace eulerdist
