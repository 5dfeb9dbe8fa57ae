#pragma once

#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "eulerdist/polynomial.hpp"
#include "eulerdist/rational.hpp"

namespace eulerdist {

enum class AtomKind { MonLog, Delta };

/// One-dimensional building block of the distribution class.
///
/// MonLog(n, p, s) is |x|^n log^p|x| H(s x). For n <= -1 it denotes the
/// finite part under the fixed regularization of the pairing oracle (inner
/// Taylor subtraction on |x| < 1, plain integral on |x| > 1). The s = -1 atom
/// is the reflection of the s = +1 atom, so the full-line monomial is
/// x^n = MonLog(n,0,+) + (-1)^n MonLog(n,0,-).
///
/// Delta(k) is the k-th derivative of the Dirac measure at 0.
struct Atom1D {
  AtomKind kind = AtomKind::MonLog;
  int n = 0;
  unsigned p = 0;
  int sign = 1;
  unsigned k = 0;

  static Atom1D monlog(int n, unsigned p, int sign);
  static Atom1D delta(unsigned k);
  static Atom1D heaviside(int sign) { return monlog(0, 0, sign); }

  bool is_delta() const noexcept { return kind == AtomKind::Delta; }
  bool is_finite_part() const noexcept { return kind == AtomKind::MonLog && n <= -1; }
  /// n for MonLog, -(k+1) for Delta.
  int eigenvalue() const noexcept { return is_delta() ? -static_cast<int>(k) - 1 : n; }

  bool operator==(const Atom1D& other) const noexcept;
  bool operator<(const Atom1D& other) const noexcept;
};

using Factors = std::vector<Atom1D>;

struct TensorTerm {
  Rational coeff;
  Factors factors;

  std::size_t dim() const noexcept { return factors.size(); }
  bool has_delta() const noexcept;
  /// Smallest coordinate carrying a Delta factor; dim() if none.
  std::size_t first_delta() const noexcept;
};

/// Finite linear combination of tensor terms in a fixed dimension.
///
/// Arithmetic results and everything returned by the library are canonical:
/// like terms merged, zeros dropped, terms sorted by factor vector.
class DistExpr {
 public:
  explicit DistExpr(std::size_t dim = 1) : dim_(dim) {}
  DistExpr(std::size_t dim, std::vector<TensorTerm> terms);

  static DistExpr single(const Rational& coeff, Factors factors);
  /// The scalar c in dimension 0.
  static DistExpr scalar(const Rational& c);

  std::size_t dim() const noexcept { return dim_; }
  const std::vector<TensorTerm>& terms() const noexcept { return terms_; }
  bool empty() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }

  /// Appends without canonicalizing.
  void push_back(TensorTerm t);
  bool is_canonical() const;

  DistExpr& operator+=(const DistExpr& other);
  DistExpr& operator-=(const DistExpr& other);
  DistExpr& operator*=(const Rational& c);
  friend DistExpr operator+(DistExpr a, const DistExpr& b) { return a += b; }
  friend DistExpr operator-(DistExpr a, const DistExpr& b) { return a -= b; }
  friend DistExpr operator*(DistExpr a, const Rational& c) { return a *= c; }
  friend DistExpr operator*(const Rational& c, DistExpr a) { return a *= c; }

  /// Structural equality of the stored term lists.
  bool operator==(const DistExpr& other) const;

 private:
  std::size_t dim_;
  std::vector<TensorTerm> terms_;
};

/// Accumulates terms keyed by factor vector; used to build canonical forms.
class TermAccumulator {
 public:
  explicit TermAccumulator(std::size_t dim) : dim_(dim) {}
  void add(const Factors& f, const Rational& c);
  void add(const DistExpr& e, const Rational& scale = Rational(1));
  DistExpr finish() const;

 private:
  std::size_t dim_;
  std::map<Factors, Rational> acc_;
};

DistExpr canonicalize(const DistExpr& e);

/// x^alpha on the full space, as a sum over sign patterns of half-line atoms.
DistExpr full_monomial(const MultiIndex& alpha);

EigenValue eigenvalue(const TensorTerm& t);

/// Splits a Z_0-supported expression by the smallest delta-bearing coordinate.
/// Parts are returned in increasing coordinate order; empty parts are omitted.
std::vector<std::pair<std::size_t, DistExpr>> decompose_hyperplane(const DistExpr& e);

/// Tensor product a(x_1..x_m) (x) b(x_{m+1}..x_{m+n}).
DistExpr tensor(const DistExpr& a, const DistExpr& b);

/// Removes coordinate j from a term (the factor is dropped).
TensorTerm drop_coord(const TensorTerm& t, std::size_t j);

/// Inserts `atom` as coordinate j into every term of e.
DistExpr insert_coord(const DistExpr& e, std::size_t j, const Atom1D& atom);

}  // namespace eulerdist
