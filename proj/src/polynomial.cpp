#include "eulerdist/polynomial.hpp"

#include <algorithm>
#include <sstream>

#include "eulerdist/error.hpp"

namespace eulerdist {

unsigned total_degree(const MultiIndex& alpha) {
  unsigned d = 0;
  for (unsigned a : alpha) d += a;
  return d;
}

bool GradedLex::operator()(const MultiIndex& a, const MultiIndex& b) const {
  const unsigned da = total_degree(a);
  const unsigned db = total_degree(b);
  if (da != db) return da < db;
  return a < b;
}

Polynomial Polynomial::constant(std::size_t dim, const Rational& c) {
  Polynomial p(dim);
  p.add_term(MultiIndex(dim, 0), c);
  return p;
}

Polynomial Polynomial::variable(std::size_t dim, std::size_t j) {
  if (j >= dim) throw Error(ErrorKind::Dimension, "variable index out of range");
  MultiIndex alpha(dim, 0);
  alpha[j] = 1;
  Polynomial p(dim);
  p.add_term(alpha, Rational(1));
  return p;
}

Polynomial Polynomial::monomial(MultiIndex alpha, const Rational& c) {
  Polynomial p(alpha.size());
  p.add_term(alpha, c);
  return p;
}

int Polynomial::degree() const {
  if (terms_.empty()) return -1;
  return static_cast<int>(total_degree(terms_.rbegin()->first));
}

unsigned Polynomial::degree_in(std::size_t j) const {
  if (j >= dim_) throw Error(ErrorKind::Dimension, "coordinate index out of range");
  unsigned d = 0;
  for (const auto& [alpha, c] : terms_) d = std::max(d, alpha[j]);
  return d;
}

bool Polynomial::is_homogeneous() const {
  if (terms_.empty()) return true;
  return total_degree(terms_.begin()->first) == total_degree(terms_.rbegin()->first);
}

Rational Polynomial::coeff(const MultiIndex& alpha) const {
  auto it = terms_.find(alpha);
  return it == terms_.end() ? Rational(0) : it->second;
}

void Polynomial::add_term(const MultiIndex& alpha, const Rational& c) {
  if (alpha.size() != dim_) throw Error(ErrorKind::Dimension, "multi-index length mismatch");
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(alpha, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void Polynomial::check_dim(std::size_t other) const {
  if (other != dim_) {
    throw Error(ErrorKind::Dimension, "dimension mismatch: " + std::to_string(dim_) +
                                          " vs " + std::to_string(other));
  }
}

Rational Polynomial::eval(std::span<const Rational> point) const {
  check_dim(point.size());
  Rational sum(0);
  for (const auto& [alpha, c] : terms_) {
    Rational term = c;
    for (std::size_t j = 0; j < dim_; ++j) term *= power(point[j], alpha[j]);
    sum += term;
  }
  return sum;
}

namespace {

template <typename T>
T eval_numeric(const Polynomial::TermMap& terms, std::size_t dim, std::span<const T> point) {
  T sum(0);
  for (const auto& [alpha, c] : terms) {
    T term(to_double(c));
    for (std::size_t j = 0; j < dim; ++j)
      for (unsigned i = 0; i < alpha[j]; ++i) term *= point[j];
    sum += term;
  }
  return sum;
}

}  // namespace

double Polynomial::eval(std::span<const double> point) const {
  check_dim(point.size());
  return eval_numeric<double>(terms_, dim_, point);
}

std::complex<double> Polynomial::eval(std::span<const std::complex<double>> point) const {
  check_dim(point.size());
  return eval_numeric<std::complex<double>>(terms_, dim_, point);
}

Polynomial Polynomial::derivative(std::size_t j) const {
  if (j >= dim_) throw Error(ErrorKind::Dimension, "derivative index out of range");
  Polynomial out(dim_);
  for (const auto& [alpha, c] : terms_) {
    if (alpha[j] == 0) continue;
    MultiIndex beta = alpha;
    --beta[j];
    out.add_term(beta, c * alpha[j]);
  }
  return out;
}

Polynomial Polynomial::homogeneous_component(unsigned degree) const {
  Polynomial out(dim_);
  for (const auto& [alpha, c] : terms_)
    if (total_degree(alpha) == degree) out.terms_.emplace(alpha, c);
  return out;
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  check_dim(other.dim_);
  for (const auto& [alpha, c] : other.terms_) add_term(alpha, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  check_dim(other.dim_);
  for (const auto& [alpha, c] : other.terms_) add_term(alpha, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const Polynomial& other) {
  check_dim(other.dim_);
  Polynomial out(dim_);
  for (const auto& [a, ca] : terms_) {
    for (const auto& [b, cb] : other.terms_) {
      MultiIndex s(dim_);
      for (std::size_t j = 0; j < dim_; ++j) s[j] = a[j] + b[j];
      out.add_term(s, ca * cb);
    }
  }
  terms_ = std::move(out.terms_);
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [alpha, coeff] : terms_) coeff *= c;
  return *this;
}

Polynomial Polynomial::operator-() const {
  Polynomial out = *this;
  for (auto& [alpha, c] : out.terms_) c = -c;
  return out;
}

Rational eval(const Polynomial& p, const EigenValue& mu) { return p.eval(mu.entries); }

Polynomial substitute_coord(const Polynomial& p, std::size_t j, const Rational& v) {
  if (j >= p.dim()) throw Error(ErrorKind::Dimension, "substitution index out of range");
  Polynomial out(p.dim() - 1);
  for (const auto& [alpha, c] : p.terms()) {
    MultiIndex beta;
    beta.reserve(p.dim() - 1);
    for (std::size_t i = 0; i < p.dim(); ++i)
      if (i != j) beta.push_back(alpha[i]);
    out.add_term(beta, c * power(v, alpha[j]));
  }
  return out;
}

namespace {

// Coefficients of p viewed as a polynomial in z_j; entry k holds the
// coefficient of z_j^k (with exponent j zeroed).
std::vector<Polynomial> split_in(const Polynomial& p, std::size_t j) {
  std::vector<Polynomial> parts(p.degree_in(j) + 1, Polynomial(p.dim()));
  for (const auto& [alpha, c] : p.terms()) {
    MultiIndex beta = alpha;
    beta[j] = 0;
    parts[alpha[j]].add_term(beta, c);
  }
  return parts;
}

Polynomial join_in(const std::vector<Polynomial>& parts, std::size_t j, std::size_t dim) {
  Polynomial out(dim);
  for (std::size_t k = 0; k < parts.size(); ++k) {
    for (const auto& [beta, c] : parts[k].terms()) {
      MultiIndex alpha = beta;
      alpha[j] = static_cast<unsigned>(k);
      out.add_term(alpha, c);
    }
  }
  return out;
}

}  // namespace

LinearFactorSplit factor_out(const Polynomial& p, std::size_t j, const Rational& c) {
  if (p.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "factor_out of the zero polynomial");
  if (j >= p.dim()) throw Error(ErrorKind::Dimension, "factor index out of range");

  LinearFactorSplit result{0, p};
  while (true) {
    std::vector<Polynomial> a = split_in(result.quotient, j);
    const std::size_t deg = a.size() - 1;
    if (deg == 0) break;
    // Synthetic division by (z_j + c).
    std::vector<Polynomial> s(deg, Polynomial(p.dim()));
    s[deg - 1] = a[deg];
    for (std::size_t k = deg - 1; k >= 1; --k) s[k - 1] = a[k] - c * s[k];
    Polynomial remainder = a[0] - c * s[0];
    if (!remainder.is_zero()) break;
    result.quotient = join_in(s, j, p.dim());
    ++result.power;
  }
  return result;
}

Polynomial principal_part(const Polynomial& p) {
  if (p.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "principal part of the zero polynomial");
  return p.homogeneous_component(static_cast<unsigned>(p.degree()));
}

Polynomial taylor_shift(const Polynomial& p, std::span<const Rational> center) {
  if (center.size() != p.dim()) throw Error(ErrorKind::Dimension, "shift center length mismatch");
  const std::size_t d = p.dim();
  Polynomial out(d);
  for (const auto& [alpha, c] : p.terms()) {
    Polynomial prod = Polynomial::constant(d, c);
    for (std::size_t j = 0; j < d; ++j) {
      if (alpha[j] == 0) continue;
      Polynomial factor(d);
      for (unsigned i = 0; i <= alpha[j]; ++i) {
        MultiIndex beta(d, 0);
        beta[j] = i;
        factor.add_term(beta, binomial(alpha[j], i) * power(center[j], alpha[j] - i));
      }
      prod *= factor;
    }
    out += prod;
  }
  return out;
}

VanishingOrder vanishing_order(const Polynomial& p, const EigenValue& mu) {
  if (p.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "vanishing order of the zero polynomial");
  Polynomial shifted = taylor_shift(p, mu.entries);
  // Lowest total degree present; among those the lexicographically largest.
  const unsigned order = total_degree(shifted.terms().begin()->first);
  MultiIndex witness = shifted.terms().begin()->first;
  for (const auto& [alpha, c] : shifted.terms()) {
    if (total_degree(alpha) != order) break;
    witness = alpha;
  }
  return {order, witness};
}

Polynomial apply_as_operator(const Polynomial& op, const Polynomial& f) {
  if (op.dim() != f.dim()) throw Error(ErrorKind::Dimension, "operator dimension mismatch");
  const std::size_t d = f.dim();
  Polynomial out(d);
  for (const auto& [gamma, cg] : op.terms()) {
    for (const auto& [beta, cf] : f.terms()) {
      bool fits = true;
      for (std::size_t j = 0; j < d && fits; ++j) fits = gamma[j] <= beta[j];
      if (!fits) continue;
      Rational c = cg * cf;
      MultiIndex rest(d);
      for (std::size_t j = 0; j < d; ++j) {
        rest[j] = beta[j] - gamma[j];
        c *= factorial(beta[j]) / factorial(rest[j]);
      }
      out.add_term(rest, c);
    }
  }
  return out;
}

std::string to_string(const Polynomial& p, std::string_view var) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    const auto& [alpha, c] = *it;
    const bool negative = c < 0;
    const Rational mag = negative ? Rational(-c) : c;
    if (first) {
      if (negative) os << "-";
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;

    std::vector<std::string> factors;
    for (std::size_t j = 0; j < alpha.size(); ++j) {
      if (alpha[j] == 0) continue;
      std::string f = std::string(var) + std::to_string(j + 1);
      if (alpha[j] > 1) f += "^" + std::to_string(alpha[j]);
      factors.push_back(std::move(f));
    }
    if (factors.empty()) {
      os << to_string(mag);
      continue;
    }
    if (mag != 1) os << to_string(mag) << "*";
    for (std::size_t i = 0; i < factors.size(); ++i) os << (i ? "*" : "") << factors[i];
  }
  return os.str();
}

}  // namespace eulerdist
