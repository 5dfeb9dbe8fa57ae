#include <doctest.h>

#include <random>

#include "eulerdist/dist.hpp"
#include "eulerdist/error.hpp"
#include "eulerdist/pairing.hpp"
#include "eulerdist/text.hpp"
#include "eulerdist/theta.hpp"
#include "generators.hpp"

using namespace eulerdist;

namespace {

const Atom1D Hp = Atom1D::heaviside(1);
const Atom1D Hm = Atom1D::heaviside(-1);
const Atom1D D0 = Atom1D::delta(0);

}  // namespace

TEST_CASE("canonicalize") {
  DistExpr e(1);
  e.push_back({2, {Hp}});
  e.push_back({3, {Hp}});
  CHECK(canonicalize(e) == DistExpr::single(5, {Hp}));

  DistExpr z(2);
  z.push_back({1, {D0, Hp}});
  z.push_back({-1, {D0, Hp}});
  CHECK(canonicalize(z).empty());

  const DistExpr twice = full_monomial({2}) + full_monomial({2});
  REQUIRE(twice.size() == 2);
  for (const auto& t : twice.terms()) CHECK(t.coeff == 2);
}

TEST_CASE("canonicalize is idempotent and keeps pairings") {
  std::mt19937 rng(21);
  const auto suite = standard_suite(1);
  for (int i = 0; i < 20; ++i) {
    DistExpr raw(1);
    for (int k = 0; k < 5; ++k) {
      const auto t = gen::term(rng, 1);
      raw.push_back(t);
      if (k % 2) raw.push_back(t);
    }
    const DistExpr c = canonicalize(raw);
    CHECK(c.is_canonical());
    CHECK(canonicalize(c) == c);
    // Pair the raw list term by term against the canonical form.
    double raw_value = 0.0;
    for (const auto& t : raw.terms()) raw_value += pair(DistExpr::single(t.coeff, t.factors), suite[1], 1e-10);
    CHECK(pair(c, suite[1], 1e-10) == doctest::Approx(raw_value).epsilon(1e-8));
  }
}

TEST_CASE("full_monomial") {
  CHECK(full_monomial({0}) == DistExpr::single(1, {Hp}) + DistExpr::single(1, {Hm}));
  CHECK(full_monomial({1}) ==
        DistExpr::single(1, {Atom1D::monlog(1, 0, 1)}) - DistExpr::single(1, {Atom1D::monlog(1, 0, -1)}));
  const DistExpr x2 = full_monomial({2, 0});
  CHECK(x2.size() == 4);
  for (const auto& t : x2.terms()) CHECK(t.coeff == 1);
  // <x1^2, exp(-|x|^2)> = (sqrt(pi)/2) * sqrt(pi)
  const double pi = 3.14159265358979323846;
  CHECK(pair(x2, GaussPoly::standard(2), 1e-10) == doctest::Approx(pi / 2).epsilon(1e-9));
}

TEST_CASE("eigenvalue") {
  CHECK(eigenvalue(TensorTerm{1, {Atom1D::delta(2), Hp}}).entries == std::vector<Rational>{-3, 0});
  CHECK(eigenvalue(TensorTerm{1, {Atom1D::monlog(3, 0, 1)}}).entries == std::vector<Rational>{3});
  CHECK(eigenvalue(TensorTerm{1, {Atom1D::monlog(-1, 0, 1), Atom1D::monlog(1, 1, 1)}}).entries ==
        std::vector<Rational>{-1, 1});
}

TEST_CASE("decompose_hyperplane") {
  const DistExpr a = DistExpr::single(1, {D0, Hp});
  const DistExpr b = DistExpr::single(1, {Hp, Atom1D::delta(1)});
  auto parts = decompose_hyperplane(a + b);
  REQUIRE(parts.size() == 2);
  CHECK(parts[0].first == 0);
  CHECK(parts[0].second == a);
  CHECK(parts[1].first == 1);
  CHECK(parts[1].second == b);

  const DistExpr dd = DistExpr::single(1, {D0, D0});
  parts = decompose_hyperplane(dd);
  REQUIRE(parts.size() == 1);
  CHECK(parts[0].first == 0);

  const DistExpr d3 = DistExpr::single(1, {Atom1D::delta(3)});
  parts = decompose_hyperplane(d3);
  REQUIRE(parts.size() == 1);
  CHECK(parts[0].second == d3);

  CHECK_THROWS(decompose_hyperplane(DistExpr::single(1, {Hp})));
}

TEST_CASE("tensor, drop and insert") {
  const DistExpr a = DistExpr::single(2, {D0});
  const DistExpr b = DistExpr::single(3, {Hp});
  CHECK(tensor(a, b) == DistExpr::single(6, {D0, Hp}));
  const TensorTerm t{1, {D0, Hp, Hm}};
  CHECK(drop_coord(t, 1).factors == Factors{D0, Hm});
  CHECK(insert_coord(DistExpr::single(1, {D0, Hm}), 1, Hp) == DistExpr::single(1, {D0, Hp, Hm}));
}
