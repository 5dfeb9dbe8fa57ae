#pragma once

#include <complex>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "eulerdist/rational.hpp"

namespace eulerdist {

/// Exponent multi-index alpha in N_0^d.
using MultiIndex = std::vector<unsigned>;

unsigned total_degree(const MultiIndex& alpha);

/// Graded lexicographic order: total degree first, then lexicographic.
struct GradedLex {
  bool operator()(const MultiIndex& a, const MultiIndex& b) const;
};

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// Terms are kept in graded-lex order and no stored coefficient is zero, so
/// two equal polynomials have identical term maps. A polynomial of dimension
/// 0 is a constant.
class Polynomial {
 public:
  using TermMap = std::map<MultiIndex, Rational, GradedLex>;

  explicit Polynomial(std::size_t dim = 1) : dim_(dim) {}

  static Polynomial constant(std::size_t dim, const Rational& c);
  static Polynomial variable(std::size_t dim, std::size_t j);
  static Polynomial monomial(MultiIndex alpha, const Rational& c);

  std::size_t dim() const noexcept { return dim_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const;
  unsigned degree_in(std::size_t j) const;
  bool is_homogeneous() const;

  const TermMap& terms() const noexcept { return terms_; }
  Rational coeff(const MultiIndex& alpha) const;
  void add_term(const MultiIndex& alpha, const Rational& c);

  Rational eval(std::span<const Rational> point) const;
  double eval(std::span<const double> point) const;
  std::complex<double> eval(std::span<const std::complex<double>> point) const;

  Polynomial derivative(std::size_t j) const;
  Polynomial homogeneous_component(unsigned degree) const;

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(const Polynomial& other);
  Polynomial& operator*=(const Rational& c);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Polynomial& b) { return a *= b; }
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }
  Polynomial operator-() const;

  bool operator==(const Polynomial& other) const = default;

 private:
  void check_dim(std::size_t other) const;

  std::size_t dim_;
  TermMap terms_;
};

/// Point at which a polynomial is evaluated in the eigen-calculus.
struct EigenValue {
  std::vector<Rational> entries;

  std::size_t size() const noexcept { return entries.size(); }
  bool operator==(const EigenValue&) const = default;
};

Rational eval(const Polynomial& p, const EigenValue& mu);

/// Fixes z_j := v and renumbers the remaining variables. j is 0-based.
Polynomial substitute_coord(const Polynomial& p, std::size_t j, const Rational& v);

struct LinearFactorSplit {
  unsigned power;
  Polynomial quotient;
};

/// Maximal r with (z_j + c)^r | p, and the exact quotient.
LinearFactorSplit factor_out(const Polynomial& p, std::size_t j, const Rational& c);

/// Homogeneous component of top degree.
Polynomial principal_part(const Polynomial& p);

/// q(w) = p(center + w).
Polynomial taylor_shift(const Polynomial& p, std::span<const Rational> center);

struct VanishingOrder {
  unsigned order;
  MultiIndex witness;
};

/// Smallest |beta| with (D^beta p)(mu) != 0.
VanishingOrder vanishing_order(const Polynomial& p, const EigenValue& mu);

/// op(d/dw) applied to f, both in the same variables.
Polynomial apply_as_operator(const Polynomial& op, const Polynomial& f);

/// Human-readable form, highest terms first: "z1^2*z2 - 3*z1 + 2".
std::string to_string(const Polynomial& p, std::string_view var = "z");

}  // namespace eulerdist
