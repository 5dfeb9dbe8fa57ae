#include <doctest.h>

#include <random>

#include "eulerdist/error.hpp"
#include "eulerdist/polynomial.hpp"
#include "eulerdist/text.hpp"
#include "generators.hpp"

using namespace eulerdist;

namespace {

Polynomial P(const char* src, std::size_t dim) { return parse_poly(src, dim); }

EigenValue mu(std::initializer_list<Rational> v) { return EigenValue{std::vector<Rational>(v)}; }

// Horner-free evaluation straight from the term map, as an independent check.
Rational brute_eval(const Polynomial& p, const std::vector<Rational>& x) {
  Rational s = 0;
  for (const auto& [alpha, c] : p.terms()) {
    Rational m = c;
    for (std::size_t j = 0; j < alpha.size(); ++j)
      for (unsigned e = 0; e < alpha[j]; ++e) m *= x[j];
    s += m;
  }
  return s;
}

}  // namespace

TEST_CASE("eval") {
  CHECK(eval(P("t1 + t2 + 2", 2), mu({-1, -1})) == 0);
  CHECK(eval(P("t1 - 7/3", 1), mu({Rational(7, 3)})) == 0);
  const Polynomial p = P("t1^2*t2 - 3*t1 + 2", 2);
  CHECK(eval(p, mu({2, Rational(1, 2)})) == -2);
  CHECK(brute_eval(p, {2, Rational(1, 2)}) == -2);
}

TEST_CASE("eval agrees with term-by-term evaluation") {
  std::mt19937 rng(11);
  for (int i = 0; i < 50; ++i) {
    const std::size_t d = 1 + i % 3;
    const Polynomial p = gen::polynomial(rng, d, 4);
    std::vector<Rational> x;
    for (std::size_t j = 0; j < d; ++j) x.push_back(gen::small_rational(rng));
    CHECK(p.eval(x) == brute_eval(p, x));
  }
}

TEST_CASE("substitute_coord") {
  CHECK(substitute_coord(P("t1 + t2 + 2", 2), 0, -1) == P("t1 + 1", 1));
  CHECK(substitute_coord(P("(t1 + 1)*t2", 2), 0, -1).is_zero());
  CHECK(substitute_coord(P("t1^2 + t2", 2), 1, 3) == P("t1^2 + 3", 1));
}

TEST_CASE("substitute_coord agrees with eval on completions") {
  std::mt19937 rng(12);
  for (int i = 0; i < 40; ++i) {
    const std::size_t d = 2 + i % 2;
    const Polynomial p = gen::polynomial(rng, d, 4);
    const std::size_t j = gen::uniform(rng, 0, static_cast<int>(d) - 1);
    const Rational v = gen::small_rational(rng);
    const Polynomial q = substitute_coord(p, j, v);
    std::vector<Rational> rest, full;
    for (std::size_t k = 0; k + 1 < d; ++k) rest.push_back(gen::small_rational(rng));
    for (std::size_t k = 0, r = 0; k < d; ++k) full.push_back(k == j ? v : rest[r++]);
    CHECK(q.eval(rest) == p.eval(full));
  }
}

TEST_CASE("factor_out") {
  auto s = factor_out(P("(t1 + 2)^2*(t2 - 1)", 2), 0, 2);
  CHECK(s.power == 2);
  CHECK(s.quotient == P("t2 - 1", 2));
  s = factor_out(P("t1 + t2", 2), 0, 0);
  CHECK(s.power == 0);
  CHECK(s.quotient == P("t1 + t2", 2));
  s = factor_out(P("5*(t1 + 4)", 1), 0, 4);
  CHECK(s.power == 1);
  CHECK(s.quotient == P("5", 1));
}

TEST_CASE("factor_out reconstructs the input") {
  std::mt19937 rng(13);
  for (int i = 0; i < 30; ++i) {
    const std::size_t d = 1 + i % 3;
    const std::size_t j = gen::uniform(rng, 0, static_cast<int>(d) - 1);
    const Rational c = gen::small_rational(rng);
    Polynomial p = gen::polynomial(rng, d, 2);
    const unsigned r = gen::uniform(rng, 0, 2);
    for (unsigned m = 0; m < r; ++m) p *= gen::linear(d, j, c);
    const auto s = factor_out(p, j, c);
    CHECK(s.power >= r);
    Polynomial back = s.quotient;
    for (unsigned m = 0; m < s.power; ++m) back *= gen::linear(d, j, c);
    CHECK(back == p);
  }
}

TEST_CASE("principal_part") {
  CHECK(principal_part(P("t1^2 + t2 + 5", 2)) == P("t1^2", 2));
  CHECK(principal_part(P("t1*t2 + t1", 2)) == P("t1*t2", 2));
  const Polynomial h = P("t1^2 - 3*t1*t2 + t2^2", 2);
  CHECK(principal_part(h) == h);
}

TEST_CASE("vanishing_order") {
  auto v = vanishing_order(P("t1*t2", 2), mu({0, 0}));
  CHECK(v.order == 2);
  CHECK(v.witness == MultiIndex{1, 1});
  v = vanishing_order(P("t1 - 2", 1), mu({2}));
  CHECK(v.order == 1);
  CHECK(v.witness == MultiIndex{1});
  v = vanishing_order(P("t1 + t2 + 2", 2), mu({0, 0}));
  CHECK(v.order == 0);
  CHECK(v.witness == MultiIndex{0, 0});
}

TEST_CASE("taylor_shift and apply_as_operator") {
  const Polynomial p = P("t1^3 - t1*t2 + 2", 2);
  const std::vector<Rational> c = {1, -2};
  const Polynomial q = taylor_shift(p, c);
  CHECK(q.eval(std::vector<Rational>{0, 0}) == p.eval(c));
  CHECK(q.eval(std::vector<Rational>{2, 1}) == p.eval(std::vector<Rational>{3, -1}));
  // (d/dw1)(w1^3) = 3 w1^2
  CHECK(apply_as_operator(P("t1", 1), P("t1^3", 1)) == P("3*t1^2", 1));
}

TEST_CASE("errors") {
  CHECK_THROWS_AS(Polynomial::variable(2, 2), Error);
  CHECK_THROWS_AS(P("t1", 2) + P("t1", 1), Error);
}
