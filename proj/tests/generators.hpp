#pragma once

// Seeded random instances shared by the property tests and the acceptance run.

#include <random>
#include <vector>

#include "eulerdist/dist.hpp"
#include "eulerdist/polynomial.hpp"

namespace gen {

using eulerdist::Atom1D;
using eulerdist::DistExpr;
using eulerdist::Factors;
using eulerdist::MultiIndex;
using eulerdist::Polynomial;
using eulerdist::Rational;
using eulerdist::TensorTerm;

inline int uniform(std::mt19937& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

inline Rational small_rational(std::mt19937& rng) {
  Rational q(uniform(rng, -6, 6), uniform(rng, 1, 3));
  q.canonicalize();
  return q;
}

inline Rational nonzero_rational(std::mt19937& rng) {
  Rational q = 0;
  while (q == 0) q = small_rational(rng);
  return q;
}

// Every multi-index in d variables with |alpha| <= max_degree.
inline std::vector<MultiIndex> multi_indices(std::size_t d, unsigned max_degree) {
  std::vector<MultiIndex> out;
  MultiIndex a(d, 0);
  while (true) {
    if (eulerdist::total_degree(a) <= max_degree) out.push_back(a);
    std::size_t j = 0;
    while (j < d && a[j] == max_degree) a[j++] = 0;
    if (j == d) break;
    ++a[j];
  }
  return out;
}

// Nonzero polynomial with 1..5 terms and total degree <= max_degree.
inline Polynomial polynomial(std::mt19937& rng, std::size_t d, unsigned max_degree) {
  const auto alphas = multi_indices(d, max_degree);
  Polynomial p(d);
  while (p.is_zero()) {
    const int terms = uniform(rng, 1, 5);
    for (int i = 0; i < terms; ++i)
      p.add_term(alphas[uniform(rng, 0, static_cast<int>(alphas.size()) - 1)], nonzero_rational(rng));
  }
  return p;
}

inline Atom1D atom(std::mt19937& rng, double delta_probability = 0.3) {
  if (std::bernoulli_distribution(delta_probability)(rng)) return Atom1D::delta(uniform(rng, 0, 4));
  return Atom1D::monlog(uniform(rng, -5, 5), uniform(rng, 0, 2), uniform(rng, 0, 1) ? 1 : -1);
}

inline TensorTerm term(std::mt19937& rng, std::size_t d, double delta_probability = 0.3) {
  Factors f;
  for (std::size_t j = 0; j < d; ++j) f.push_back(atom(rng, delta_probability));
  return TensorTerm{nonzero_rational(rng), f};
}

inline DistExpr expression(std::mt19937& rng, std::size_t d, int max_terms = 4, double delta_probability = 0.3) {
  DistExpr e(d);
  while (e.empty()) {
    const int n = uniform(rng, 1, max_terms);
    for (int i = 0; i < n; ++i) {
      const TensorTerm t = term(rng, d, delta_probability);
      e += DistExpr::single(t.coeff, t.factors);
    }
  }
  return e;
}

// Every term carries at least one delta factor.
inline DistExpr hyperplane_expression(std::mt19937& rng, std::size_t d, int max_terms = 4) {
  DistExpr e(d);
  while (e.empty()) {
    const int n = uniform(rng, 1, max_terms);
    for (int i = 0; i < n; ++i) {
      TensorTerm t = term(rng, d, 0.4);
      if (!t.has_delta()) t.factors[uniform(rng, 0, static_cast<int>(d) - 1)] = Atom1D::delta(uniform(rng, 0, 4));
      e += DistExpr::single(t.coeff, t.factors);
    }
  }
  return e;
}

// z_j + c as a polynomial in d variables.
inline Polynomial linear(std::size_t d, std::size_t j, const Rational& c) {
  return Polynomial::variable(d, j) + Polynomial::constant(d, c);
}

}  // namespace gen
