#include <doctest.h>

#include <random>

#include "eulerdist/error.hpp"
#include "eulerdist/pairing.hpp"
#include "eulerdist/text.hpp"
#include "eulerdist/theta.hpp"
#include "generators.hpp"

using namespace eulerdist;

namespace {

DistExpr combination(const AtomCombination& c) {
  DistExpr e(1);
  for (const auto& [coeff, atom] : c) e += DistExpr::single(coeff, {atom});
  return e;
}

DistExpr one(const Atom1D& a, const Rational& c = 1) { return DistExpr::single(c, {a}); }

}  // namespace

TEST_CASE("theta on single atoms") {
  CHECK(combination(apply_theta(Atom1D::delta(2))) == one(Atom1D::delta(2), -3));
  CHECK(apply_theta(Atom1D::heaviside(1)).empty());
  CHECK(combination(apply_theta(Atom1D::monlog(-1, 0, 1))) ==
        one(Atom1D::monlog(-1, 0, 1), -1) + one(Atom1D::delta(0)));
  CHECK(combination(apply_theta(Atom1D::monlog(2, 1, 1))) ==
        one(Atom1D::monlog(2, 1, 1), 2) + one(Atom1D::monlog(2, 0, 1)));
}

TEST_CASE("finite-part corrections") {
  // theta Pf(x^-2 H(x)) = -2 Pf(x^-2 H(x)) + delta - delta'
  CHECK(combination(apply_theta(Atom1D::monlog(-2, 0, 1))) ==
        one(Atom1D::monlog(-2, 0, 1), -2) + one(Atom1D::delta(0)) - one(Atom1D::delta(1)));
  // On the negative half line every correction carries +1/i!.
  CHECK(combination(apply_theta(Atom1D::monlog(-3, 0, -1))) ==
        one(Atom1D::monlog(-3, 0, -1), -3) + one(Atom1D::delta(0)) + one(Atom1D::delta(1)) +
            one(Atom1D::delta(2), Rational(1, 2)));
  // With a log power the corrections vanish.
  CHECK(combination(apply_theta(Atom1D::monlog(-1, 1, 1))) ==
        one(Atom1D::monlog(-1, 1, 1), -1) + one(Atom1D::monlog(-1, 0, 1)));
}

TEST_CASE("every table row agrees with the adjoint oracle") {
  const auto suite = standard_suite(1);
  for (const auto& a : adjoint_generator_suite()) {
    for (std::size_t f : {0u, 4u, 7u}) {
      CAPTURE(a.n);
      CAPTURE(a.p);
      CAPTURE(a.sign);
      CAPTURE(a.k);
      CHECK(adjoint_check(a, suite[f], 0, 1e-9) <= 1e-6);
    }
  }
}

TEST_CASE("apply_polynomial") {
  for (int n = -3; n <= 4; ++n) {
    for (int a = -2; a <= 2; ++a) {
      if (n < 0) continue;
      const Polynomial p = parse_poly("t1 - " + std::to_string(a) + "", 1);
      const DistExpr x = full_monomial({static_cast<unsigned>(n)});
      CHECK(equal(apply_polynomial(p, x), x * Rational(n - a)));
    }
  }
  CHECK(equal(apply_polynomial(parse_poly("t1 + 1", 1), one(Atom1D::monlog(-1, 0, 1))), one(Atom1D::delta(0))));
  CHECK(apply_polynomial(parse_poly("t1 + t2 + 2", 2), DistExpr::single(1, {Atom1D::delta(0), Atom1D::delta(0)}))
            .empty());
}

TEST_CASE("theta commutes across coordinates") {
  std::mt19937 rng(31);
  for (int i = 0; i < 20; ++i) {
    const DistExpr e = gen::expression(rng, 2);
    CHECK(equal(apply_theta(0, apply_theta(1, e)), apply_theta(1, apply_theta(0, e))));
  }
}

TEST_CASE("equal") {
  const DistExpr a = one(Atom1D::delta(0)) + one(Atom1D::heaviside(1));
  DistExpr b(1);
  b.push_back({1, {Atom1D::heaviside(1)}});
  b.push_back({1, {Atom1D::delta(0)}});
  CHECK(equal(a, b));
  CHECK(equal(one(Atom1D::heaviside(1)) + one(Atom1D::heaviside(-1)), full_monomial({0})));
  CHECK_FALSE(equal(one(Atom1D::delta(0)), one(Atom1D::delta(0), 2)));
}

TEST_CASE("closure") {
  const AtomSet logs = closure(AtomSet{Atom1D::monlog(3, 2, 1)});
  CHECK(logs == AtomSet{Atom1D::monlog(3, 2, 1), Atom1D::monlog(3, 1, 1), Atom1D::monlog(3, 0, 1)});
  CHECK(closure(AtomSet{Atom1D::delta(4)}) == AtomSet{Atom1D::delta(4)});
  CHECK(closure(AtomSet{Atom1D::monlog(-2, 0, 1)}) ==
        AtomSet{Atom1D::monlog(-2, 0, 1), Atom1D::delta(0), Atom1D::delta(1)});
  // Closed under theta.
  std::mt19937 rng(32);
  for (int i = 0; i < 20; ++i) {
    const AtomSet c = closure(AtomSet{gen::atom(rng), gen::atom(rng)});
    for (const auto& a : c)
      for (const auto& [coeff, out] : apply_theta(a)) CHECK(c.count(out) == 1);
  }
}
