#include "eulerdist/dist.hpp"

#include <algorithm>
#include <tuple>

#include "eulerdist/error.hpp"

namespace eulerdist {

Atom1D Atom1D::monlog(int n, unsigned p, int sign) {
  if (sign != 1 && sign != -1) throw Error(ErrorKind::UnsupportedInput, "atom sign must be +1 or -1");
  Atom1D a;
  a.kind = AtomKind::MonLog;
  a.n = n;
  a.p = p;
  a.sign = sign;
  return a;
}

Atom1D Atom1D::delta(unsigned k) {
  Atom1D a;
  a.kind = AtomKind::Delta;
  a.sign = 1;
  a.k = k;
  return a;
}

bool Atom1D::operator==(const Atom1D& other) const noexcept {
  if (kind != other.kind) return false;
  if (kind == AtomKind::Delta) return k == other.k;
  return n == other.n && p == other.p && sign == other.sign;
}

bool Atom1D::operator<(const Atom1D& other) const noexcept {
  if (kind != other.kind) return kind == AtomKind::MonLog;
  if (kind == AtomKind::Delta) return k < other.k;
  // Positive half-line first.
  return std::make_tuple(-sign, n, p) < std::make_tuple(-other.sign, other.n, other.p);
}

bool TensorTerm::has_delta() const noexcept { return first_delta() < factors.size(); }

std::size_t TensorTerm::first_delta() const noexcept {
  for (std::size_t j = 0; j < factors.size(); ++j)
    if (factors[j].is_delta()) return j;
  return factors.size();
}

DistExpr::DistExpr(std::size_t dim, std::vector<TensorTerm> terms) : dim_(dim) {
  for (auto& t : terms) push_back(std::move(t));
}

DistExpr DistExpr::single(const Rational& coeff, Factors factors) {
  DistExpr e(factors.size());
  if (coeff != 0) e.terms_.push_back({coeff, std::move(factors)});
  return e;
}

DistExpr DistExpr::scalar(const Rational& c) { return single(c, {}); }

void DistExpr::push_back(TensorTerm t) {
  if (t.factors.size() != dim_) throw Error(ErrorKind::Dimension, "term dimension mismatch");
  terms_.push_back(std::move(t));
}

bool DistExpr::is_canonical() const {
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (terms_[i].coeff == 0) return false;
    if (i > 0 && !(terms_[i - 1].factors < terms_[i].factors)) return false;
  }
  return true;
}

DistExpr& DistExpr::operator+=(const DistExpr& other) {
  if (other.dim_ != dim_) throw Error(ErrorKind::Dimension, "expression dimension mismatch");
  TermAccumulator acc(dim_);
  acc.add(*this);
  acc.add(other);
  *this = acc.finish();
  return *this;
}

DistExpr& DistExpr::operator-=(const DistExpr& other) {
  if (other.dim_ != dim_) throw Error(ErrorKind::Dimension, "expression dimension mismatch");
  TermAccumulator acc(dim_);
  acc.add(*this);
  acc.add(other, Rational(-1));
  *this = acc.finish();
  return *this;
}

DistExpr& DistExpr::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.coeff *= c;
  return *this;
}

bool DistExpr::operator==(const DistExpr& other) const {
  if (dim_ != other.dim_ || terms_.size() != other.terms_.size()) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (terms_[i].coeff != other.terms_[i].coeff) return false;
    if (terms_[i].factors != other.terms_[i].factors) return false;
  }
  return true;
}

void TermAccumulator::add(const Factors& f, const Rational& c) {
  if (f.size() != dim_) throw Error(ErrorKind::Dimension, "term dimension mismatch");
  if (c == 0) return;
  auto [it, inserted] = acc_.try_emplace(f, c);
  if (!inserted) it->second += c;
}

void TermAccumulator::add(const DistExpr& e, const Rational& scale) {
  for (const auto& t : e.terms()) add(t.factors, t.coeff * scale);
}

DistExpr TermAccumulator::finish() const {
  DistExpr out(dim_);
  for (const auto& [f, c] : acc_)
    if (c != 0) out.push_back({c, f});
  return out;
}

DistExpr canonicalize(const DistExpr& e) {
  TermAccumulator acc(e.dim());
  acc.add(e);
  return acc.finish();
}

DistExpr full_monomial(const MultiIndex& alpha) {
  const std::size_t d = alpha.size();
  TermAccumulator acc(d);
  // Enumerate the 2^d sign patterns.
  for (std::size_t mask = 0; mask < (std::size_t{1} << d); ++mask) {
    Factors f(d);
    Rational c(1);
    for (std::size_t j = 0; j < d; ++j) {
      const bool negative = (mask >> j) & 1U;
      f[j] = Atom1D::monlog(static_cast<int>(alpha[j]), 0, negative ? -1 : 1);
      if (negative && (alpha[j] % 2 == 1)) c = -c;
    }
    acc.add(f, c);
  }
  return acc.finish();
}

EigenValue eigenvalue(const TensorTerm& t) {
  EigenValue mu;
  mu.entries.reserve(t.factors.size());
  for (const auto& a : t.factors) mu.entries.emplace_back(a.eigenvalue());
  return mu;
}

std::vector<std::pair<std::size_t, DistExpr>> decompose_hyperplane(const DistExpr& e) {
  std::map<std::size_t, TermAccumulator> parts;
  for (const auto& t : e.terms()) {
    const std::size_t j = t.first_delta();
    if (j == t.dim()) {
      throw Error(ErrorKind::TermNotHyperplaneSupported,
                  "term has no delta factor, so it is not supported on a coordinate hyperplane");
    }
    parts.try_emplace(j, e.dim()).first->second.add(t.factors, t.coeff);
  }
  std::vector<std::pair<std::size_t, DistExpr>> out;
  for (const auto& [j, acc] : parts) {
    DistExpr part = acc.finish();
    if (!part.empty()) out.emplace_back(j, std::move(part));
  }
  return out;
}

DistExpr tensor(const DistExpr& a, const DistExpr& b) {
  TermAccumulator acc(a.dim() + b.dim());
  for (const auto& ta : a.terms()) {
    for (const auto& tb : b.terms()) {
      Factors f = ta.factors;
      f.insert(f.end(), tb.factors.begin(), tb.factors.end());
      acc.add(f, ta.coeff * tb.coeff);
    }
  }
  return acc.finish();
}

TensorTerm drop_coord(const TensorTerm& t, std::size_t j) {
  if (j >= t.dim()) throw Error(ErrorKind::Dimension, "coordinate index out of range");
  TensorTerm out{t.coeff, {}};
  out.factors.reserve(t.dim() - 1);
  for (std::size_t i = 0; i < t.dim(); ++i)
    if (i != j) out.factors.push_back(t.factors[i]);
  return out;
}

DistExpr insert_coord(const DistExpr& e, std::size_t j, const Atom1D& atom) {
  if (j > e.dim()) throw Error(ErrorKind::Dimension, "coordinate index out of range");
  TermAccumulator acc(e.dim() + 1);
  for (const auto& t : e.terms()) {
    Factors f = t.factors;
    f.insert(f.begin() + static_cast<std::ptrdiff_t>(j), atom);
    acc.add(f, t.coeff);
  }
  return acc.finish();
}

}  // namespace eulerdist
