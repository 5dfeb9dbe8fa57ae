#include <doctest.h>

#include <random>

#include "eulerdist/error.hpp"
#include "eulerdist/text.hpp"
#include "eulerdist/theta.hpp"
#include "generators.hpp"

using namespace eulerdist;

TEST_CASE("parse_poly") {
  Polynomial p(2);
  p.add_term({2, 1}, 1);
  p.add_term({1, 0}, -3);
  p.add_term({0, 0}, 2);
  CHECK(parse_poly("t1^2*t2 - 3*t1 + 2") == p);
  CHECK(parse_poly("t1 + t2 + 2") == gen::linear(2, 0, 2) + Polynomial::variable(2, 1));
  CHECK(parse_poly(" -t1 ^ 2 ", 1) == Polynomial::monomial({2}, -1));
  CHECK(parse_poly("3/6*t1", 1) == Polynomial::monomial({1}, Rational(1, 2)));
}

TEST_CASE("parse errors carry offsets") {
  try {
    parse_poly("t1*(t1+1");
    FAIL("no error");
  } catch (const ParseError& e) {
    CHECK(e.offset() == 8);
    CHECK(!e.expected().empty());
  }
  CHECK_THROWS_AS(parse_poly("t0"), ParseError);
  CHECK_THROWS_AS(parse_poly("t1 +"), ParseError);
  CHECK_THROWS_AS(parse_poly("1/0"), Error);
  try {
    parse_poly("t3", 2);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Dimension);
  }
}

TEST_CASE("parse_dist") {
  CHECK(parse_dist("delta(x1,2) * x2^3*H(x2)", 2) ==
        DistExpr::single(1, {Atom1D::delta(2), Atom1D::monlog(3, 0, 1)}));
  CHECK(parse_dist("x1^-1*H(x1)", 1) == DistExpr::single(1, {Atom1D::monlog(-1, 0, 1)}));
  CHECK(parse_dist("1/2 * mono(x1,2) + delta(x1,0)", 1) ==
        full_monomial({2}) * Rational(1, 2) + DistExpr::single(1, {Atom1D::delta(0)}));
  CHECK(parse_dist("x1^3*H(-x1)", 1) == DistExpr::single(-1, {Atom1D::monlog(3, 0, -1)}));
  CHECK(parse_dist("delta(x2,0)", 2) == tensor(full_monomial({0}), DistExpr::single(1, {Atom1D::delta(0)})));
  try {
    parse_dist("delta(x1,0)*H(x1)", 1);
    FAIL("no error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::CoordinateConflict);
  }
  try {
    parse_dist("x3", 2);
    FAIL("no error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Dimension);
  }
}

TEST_CASE("format and round trip") {
  CHECK(format_dist(DistExpr(2)) == "0");
  CHECK(format_dist(DistExpr::single(1, {Atom1D::monlog(-1, 0, 1)})) == "x1^-1*H(x1)");
  CHECK(format_poly(parse_poly("(t1+1)^2", 1)) == "t1^2 + 2*t1 + 1");
  std::mt19937 rng(51);
  for (int i = 0; i < 100; ++i) {
    const std::size_t d = 1 + i % 3;
    const DistExpr e = gen::expression(rng, d, 4);
    CHECK(parse_dist(format_dist(e), d) == e);
    const Polynomial p = gen::polynomial(rng, d, 4);
    CHECK(parse_poly(format_poly(p), d) == p);
  }
}

TEST_CASE("test functions") {
  const GaussPoly g = parse_testfn("gauss(x1*x2 + 1; c=1,-1/2; w=3/2)", 2);
  CHECK(g.center() == std::vector<Rational>{1, Rational(-1, 2)});
  CHECK(g.width() == Rational(3, 2));
  const GaussPoly back = parse_testfn(format_testfn(g), 2);
  CHECK(back.poly() == g.poly());
  CHECK(back.center() == g.center());
  CHECK(back.width() == g.width());
  CHECK(parse_testfn("gauss(1)", 1).center() == std::vector<Rational>{0});
  CHECK_THROWS_AS(parse_testfn("gauss(1; w=0)", 1), Error);
}
