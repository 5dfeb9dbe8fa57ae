#include "eulerdist/solver.hpp"

#include <algorithm>
#include <future>
#include <map>
#include <optional>
#include <sstream>

#include "eulerdist/error.hpp"
#include "eulerdist/linear.hpp"
#include "eulerdist/theta.hpp"

namespace eulerdist {

std::string TraceStep::describe() const {
  std::ostringstream os;
  const std::size_t c = coordinate + 1;
  switch (kind) {
    case TraceKind::Substitution:
      os << "substitute z" << c << " := " << to_string(value);
      break;
    case TraceKind::FactorExtraction:
      os << "factor (z" << c << (value < 0 ? " - " : " + ")
         << to_string(value < 0 ? Rational(-value) : value) << ")^" << power;
      break;
    case TraceKind::Resonant1D:
      os << "resonant_1d x" << c << " k=" << power;
      break;
  }
  return os.str();
}

namespace {

// All multi-indices of total degree `degree` in `dim` variables, in
// lexicographically descending order (z1-heavy first).
std::vector<MultiIndex> monomials_of_degree(std::size_t dim, unsigned degree) {
  std::vector<MultiIndex> out;
  if (dim == 0) {
    if (degree == 0) out.emplace_back();
    return out;
  }
  MultiIndex cur(dim, 0);
  auto rec = [&](auto&& self, std::size_t j, unsigned left) -> void {
    if (j + 1 == dim) {
      cur[j] = left;
      out.push_back(cur);
      return;
    }
    for (unsigned a = left + 1; a-- > 0;) {
      cur[j] = a;
      self(self, j + 1, left - a);
    }
  };
  rec(rec, 0, degree);
  return out;
}

unsigned lowest_degree(const Polynomial& q) { return total_degree(q.terms().begin()->first); }

// Polynomial F of total degree <= top with q(d/dL) F = g, solved degree by
// degree from the top. Components that are not forced are zero.
std::optional<Polynomial> solve_graded(const Polynomial& q, const Polynomial& g, unsigned top) {
  const std::size_t d = q.dim();
  const unsigned v = lowest_degree(q);
  const Polynomial q_low = q.homogeneous_component(v);
  const int deg_g = g.degree();
  Polynomial f(d);

  const int start = std::max<int>(deg_g, static_cast<int>(top) - static_cast<int>(v));
  for (int e = start; e >= 0; --e) {
    const unsigned ue = static_cast<unsigned>(e);
    Polynomial rhs = (g - apply_as_operator(q, f)).homogeneous_component(ue);
    if (ue + v > top) {
      if (!rhs.is_zero()) return std::nullopt;
      continue;
    }
    const auto unknowns = monomials_of_degree(d, ue + v);
    const auto equations = monomials_of_degree(d, ue);
    std::map<MultiIndex, std::size_t> row_of;
    for (std::size_t r = 0; r < equations.size(); ++r) row_of[equations[r]] = r;

    RationalMatrix a(equations.size(), std::vector<Rational>(unknowns.size(), Rational(0)));
    for (std::size_t c = 0; c < unknowns.size(); ++c) {
      const Polynomial image = apply_as_operator(q_low, Polynomial::monomial(unknowns[c], Rational(1)));
      for (const auto& [beta, coeff] : image.terms()) a[row_of.at(beta)][c] = coeff;
    }
    std::vector<Rational> b(equations.size(), Rational(0));
    for (const auto& [beta, coeff] : rhs.terms()) b[row_of.at(beta)] = coeff;

    auto x = solve_exact(std::move(a), std::move(b));
    if (!x) return std::nullopt;
    for (std::size_t c = 0; c < unknowns.size(); ++c) f.add_term(unknowns[c], (*x)[c]);
  }
  if (!(apply_as_operator(q, f) == g)) return std::nullopt;
  return f;
}

DistExpr scalar_divide(const DistExpr& e, const Rational& c) { return e * (Rational(1) / c); }

DistExpr as_expr(const TensorTerm& t) { return DistExpr::single(t.coeff, t.factors); }

// Carries the trace and bookkeeping of one solve() call.
class Solver {
 public:
  explicit Solver(SolveReport& report) : report_(report) {}

  DistExpr solve(const Polynomial& p, const DistExpr& t, const std::vector<std::size_t>& origin) {
    if (p.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "P must be a non-trivial polynomial");
    if (p.dim() != t.dim()) {
      throw Error(ErrorKind::Dimension, "polynomial has " + std::to_string(p.dim()) +
                                            " variables but T has dimension " + std::to_string(t.dim()));
    }
    TermAccumulator acc(t.dim());
    const DistExpr rhs = canonicalize(t);
    for (const auto& term : rhs.terms()) acc.add(solve_term(p, term, origin));
    return acc.finish();
  }

  DistExpr solve_term(const Polynomial& p, const TensorTerm& t, const std::vector<std::size_t>& origin) {
    ++report_.terms_dispatched;
    if (p.degree() == 0) return scalar_divide(as_expr(t), p.terms().begin()->second);
    if (t.has_delta()) return delta_term(p, t, origin);

    ContinuousStep step = solve_continuous_term(p, t);
    report_.escalations.push_back({step.bump, step.vanishing_order});
    report_.escalation_depth = std::max(report_.escalation_depth, step.bump);
    if (step.residual.empty()) return step.partial;
    return step.partial + solve(p, step.residual, origin);
  }

  DistExpr delta_term(const Polynomial& p, const TensorTerm& t, const std::vector<std::size_t>& origin) {
    const std::size_t j = t.first_delta();
    if (j == t.dim()) throw Error(ErrorKind::InvalidArgument, "term has no delta factor");
    const unsigned k = t.factors[j].k;
    const Rational root(-static_cast<long>(k) - 1);

    Polynomial reduced = substitute_coord(p, j, root);
    if (!reduced.is_zero()) {
      report_.recursion_trace.push_back({TraceKind::Substitution, origin[j], root, 0});
      std::vector<std::size_t> sub_origin = origin;
      sub_origin.erase(sub_origin.begin() + static_cast<std::ptrdiff_t>(j));
      const DistExpr rest = as_expr(drop_coord(t, j));
      return insert_coord(solve(reduced, rest, sub_origin), j, t.factors[j]);
    }

    // z_j + k + 1 divides P: split off the full power and climb back with
    // the resonant one-dimensional solve.
    const auto [r, q] = factor_out(p, j, Rational(k + 1));
    report_.recursion_trace.push_back({TraceKind::FactorExtraction, origin[j], Rational(k + 1), r});
    DistExpr w = solve_term(q, t, origin);
    for (unsigned i = 0; i < r; ++i) {
      w = resonant_1d(j, k, w);
      report_.recursion_trace.push_back({TraceKind::Resonant1D, origin[j], Rational(0), k});
    }
    return w;
  }

 private:
  SolveReport& report_;
};

std::vector<std::size_t> identity_origin(std::size_t d) {
  std::vector<std::size_t> o(d);
  for (std::size_t i = 0; i < d; ++i) o[i] = i;
  return o;
}

void check_atoms(const DistExpr& t) {
  for (const auto& term : t.terms()) {
    for (const auto& a : term.factors) {
      if (a.kind == AtomKind::MonLog && a.sign != 1 && a.sign != -1)
        throw Error(ErrorKind::UnsupportedInput, "atom sign must be +1 or -1");
    }
  }
}

}  // namespace

ContinuousStep solve_continuous_term(const Polynomial& p, const TensorTerm& t) {
  if (p.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "P must be a non-trivial polynomial");
  if (p.dim() != t.dim()) throw Error(ErrorKind::Dimension, "term dimension mismatch");
  if (t.has_delta()) throw Error(ErrorKind::InvalidArgument, "continuous phase needs a delta-free term");
  const std::size_t d = t.dim();

  // Modulo delta terms, theta_j acts on x^n log^q as n + d/dL_j on the
  // polynomial L^q, so P(theta) becomes P(mu + d/dL).
  const EigenValue mu = eigenvalue(t);
  const Polynomial shifted = taylor_shift(p, mu.entries);
  const unsigned v = total_degree(shifted.terms().begin()->first);

  MultiIndex logs(d);
  for (std::size_t j = 0; j < d; ++j) logs[j] = t.factors[j].p;
  const Polynomial g = Polynomial::monomial(logs, t.coeff);
  const unsigned base = total_degree(logs);

  std::optional<Polynomial> f;
  unsigned bump = 0;
  for (; bump <= v; ++bump) {
    f = solve_graded(shifted, g, base + bump);
    if (f) break;
  }
  if (!f) {
    throw Error(ErrorKind::EscalationExceeded,
                "no solution with log bump up to the vanishing order " + std::to_string(v));
  }

  TermAccumulator acc(d);
  for (const auto& [q, c] : f->terms()) {
    Factors factors(d);
    for (std::size_t j = 0; j < d; ++j)
      factors[j] = Atom1D::monlog(t.factors[j].n, q[j], t.factors[j].sign);
    acc.add(factors, c);
  }
  ContinuousStep step;
  step.partial = acc.finish();
  step.residual = as_expr(t) - apply_polynomial(p, step.partial);
  step.bump = bump;
  step.vanishing_order = v;
  for (const auto& term : step.residual.terms()) {
    if (!term.has_delta())
      throw Error(ErrorKind::Internal, "quadrant phase left a residual off the coordinate hyperplanes");
  }
  return step;
}

DistExpr solve_delta_term(const Polynomial& p, const TensorTerm& t) {
  SolveReport scratch;
  Solver solver(scratch);
  return solver.delta_term(p, t, identity_origin(t.dim()));
}

DistExpr resonant_1d(std::size_t j, unsigned k, const DistExpr& v) {
  if (j >= v.dim()) throw Error(ErrorKind::Dimension, "resonant coordinate out of range");
  const int n = -static_cast<int>(k) - 1;

  // Group by the factors outside coordinate j; each group is a 1-D problem.
  std::map<Factors, std::map<Atom1D, Rational>> groups;
  for (const auto& t : v.terms()) {
    const Atom1D& a = t.factors[j];
    const bool allowed = (a.is_delta() && a.k <= k) || (a.kind == AtomKind::MonLog && a.n == n);
    if (!allowed) {
      throw Error(ErrorKind::UnsupportedInput,
                  "resonant solve expects Delta(i<=k) or MonLog(-(k+1), q, s) in the resonant coordinate");
    }
    groups[drop_coord(t, j).factors][a] += t.coeff;
  }

  TermAccumulator acc(v.dim());
  for (const auto& [rest, rhs] : groups) {
    unsigned q_max = 0;
    bool has_monlog = false;
    for (const auto& [a, c] : rhs) {
      if (a.kind == AtomKind::MonLog) {
        has_monlog = true;
        q_max = std::max(q_max, a.p);
      }
    }
    const unsigned bump_limit = has_monlog ? q_max + 2 : 1;

    std::optional<std::vector<Rational>> x;
    std::vector<Atom1D> columns;
    for (unsigned bump = 0; bump <= bump_limit && !x; ++bump) {
      // Deltas first so the pivot choice reproduces the Heaviside-side
      // finite part; the reflected side only enters when forced.
      columns.clear();
      for (unsigned i = 0; i <= k; ++i) columns.push_back(Atom1D::delta(i));
      for (int s : {1, -1})
        for (unsigned q = 0; q <= bump; ++q) columns.push_back(Atom1D::monlog(n, q, s));

      std::vector<AtomCombination> images;
      std::map<Atom1D, std::size_t> row_of;
      for (const auto& col : columns) {
        AtomCombination img = apply_theta(col);
        img.emplace_back(Rational(k + 1), col);
        for (const auto& [c, a] : img) row_of.try_emplace(a, 0);
        images.push_back(std::move(img));
      }
      for (const auto& [a, c] : rhs) row_of.try_emplace(a, 0);
      std::size_t idx = 0;
      for (auto& [a, r] : row_of) r = idx++;

      RationalMatrix m(row_of.size(), std::vector<Rational>(columns.size(), Rational(0)));
      for (std::size_t c = 0; c < columns.size(); ++c)
        for (const auto& [coeff, a] : images[c]) m[row_of.at(a)][c] += coeff;
      std::vector<Rational> b(row_of.size(), Rational(0));
      for (const auto& [a, c] : rhs) b[row_of.at(a)] = c;
      x = solve_exact(std::move(m), std::move(b));
    }
    if (!x) throw Error(ErrorKind::EscalationExceeded, "resonant solve did not close");

    for (std::size_t c = 0; c < columns.size(); ++c) {
      if ((*x)[c] == 0) continue;
      Factors f = rest;
      f.insert(f.begin() + static_cast<std::ptrdiff_t>(j), columns[c]);
      acc.add(f, (*x)[c]);
    }
  }
  return acc.finish();
}

bool verify(const Polynomial& p, const DistExpr& u, const DistExpr& t) {
  if (p.dim() != u.dim() || u.dim() != t.dim()) return false;
  return equal(apply_polynomial(p, u), t);
}

std::size_t trace_cap(const Polynomial& p, std::size_t terms_dispatched) {
  const std::size_t deg = p.degree() < 0 ? 0 : static_cast<std::size_t>(p.degree());
  return std::max<std::size_t>(p.dim(), 1) * (deg + 1) * terms_dispatched;
}

SolveReport solve(const Polynomial& p, const DistExpr& t, const SolveOptions& options) {
  check_atoms(t);
  if (p.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "P must be a non-trivial polynomial");
  if (p.dim() != t.dim()) {
    throw Error(ErrorKind::Dimension, "polynomial has " + std::to_string(p.dim()) +
                                          " variables but T has dimension " + std::to_string(t.dim()));
  }
  const DistExpr rhs = canonicalize(t);
  const auto origin = identity_origin(t.dim());
  SolveReport report;

  if (options.parallel_terms && rhs.size() > 1) {
    std::vector<std::future<std::pair<DistExpr, SolveReport>>> jobs;
    for (const auto& term : rhs.terms()) {
      jobs.push_back(std::async(std::launch::async, [&p, term, &origin] {
        SolveReport part;
        Solver solver(part);
        DistExpr u = solver.solve_term(p, term, origin);
        return std::make_pair(std::move(u), std::move(part));
      }));
    }
    TermAccumulator acc(t.dim());
    for (auto& job : jobs) {
      auto [u, part] = job.get();
      acc.add(u);
      report.escalation_depth = std::max(report.escalation_depth, part.escalation_depth);
      report.terms_dispatched += part.terms_dispatched;
      report.recursion_trace.insert(report.recursion_trace.end(), part.recursion_trace.begin(),
                                    part.recursion_trace.end());
      report.escalations.insert(report.escalations.end(), part.escalations.begin(),
                                part.escalations.end());
    }
    report.solution = acc.finish();
  } else {
    Solver solver(report);
    report.solution = solver.solve(p, rhs, origin);
  }

  for (const auto& e : report.escalations) {
    if (e.bump > e.vanishing_order)
      throw Error(ErrorKind::Internal, "log bump exceeded the vanishing order");
  }
  if (report.recursion_trace.size() > trace_cap(p, report.terms_dispatched))
    throw Error(ErrorKind::Internal, "recursion trace exceeded its cap");

  report.verified = verify(p, report.solution, rhs);
  return report;
}

}  // namespace eulerdist
