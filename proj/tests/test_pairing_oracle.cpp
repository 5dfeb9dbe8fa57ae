#include <doctest.h>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <numbers>

#include "eulerdist/error.hpp"
#include "eulerdist/pairing.hpp"
#include "eulerdist/text.hpp"
#include "eulerdist/theta.hpp"

using namespace eulerdist;

namespace {

// Finite part of int_0^inf f(x)/x dx with the subtraction on (0, 1), by
// double-exponential quadrature.
double pf_inverse(const std::function<double(double)>& f) {
  boost::math::quadrature::tanh_sinh<double> inner;
  boost::math::quadrature::exp_sinh<double> outer;
  const double f0 = f(0.0);
  const double a = inner.integrate([&](double x) { return x == 0 ? 0.0 : (f(x) - f0) / x; }, 0.0, 1.0);
  const double b = outer.integrate([&](double x) { return x > 60 ? 0.0 : f(x) / x; }, 1.0, INFINITY);
  return a + b;
}

const double kEulerGamma = std::numbers::egamma;

}  // namespace

TEST_CASE("closed-form pairings") {
  const GaussPoly g = GaussPoly::standard(1);
  CHECK(pair(DistExpr::single(1, {Atom1D::delta(2)}), g, 1e-12) == doctest::Approx(-2.0).epsilon(1e-12));
  CHECK(pair(DistExpr::single(1, {Atom1D::heaviside(1)}), g, 1e-12) ==
        doctest::Approx(std::sqrt(std::numbers::pi) / 2).epsilon(1e-11));
  const double pf = pair(DistExpr::single(1, {Atom1D::monlog(-1, 0, 1)}), g, 1e-12);
  CHECK(pf == doctest::Approx(-kEulerGamma / 2).epsilon(1e-10));
  CHECK(pf == doctest::Approx(pf_inverse([](double x) { return std::exp(-x * x); })).epsilon(1e-10));
}

TEST_CASE("finite part against an independent quadrature") {
  const GaussPoly phi = parse_testfn("gauss(1 + x1 - x1^3; c=1/3; w=3/2)", 1);
  const auto f = [&](double x) { return phi.value(std::span<const double>(&x, 1)); };
  const double expected = pf_inverse(f);
  CHECK(pair(DistExpr::single(1, {Atom1D::monlog(-1, 0, 1)}), phi, 1e-12) == doctest::Approx(expected).epsilon(1e-9));
  // Reflection: Pf(|x|^-1 H(-x)) pairs with phi(-x).
  const double reflected = pf_inverse([&](double x) { return f(-x); });
  CHECK(pair(DistExpr::single(1, {Atom1D::monlog(-1, 0, -1)}), phi, 1e-12) ==
        doctest::Approx(reflected).epsilon(1e-9));
}

TEST_CASE("theta row for Pf(x^-1 H) against the independent quadrature") {
  // <theta A, phi> = -<A, (x phi)'>
  const GaussPoly phi = GaussPoly::standard(1);
  const DistExpr ta = apply_theta(0, DistExpr::single(1, {Atom1D::monlog(-1, 0, 1)}));
  const double lhs = pair(ta, phi, 1e-12);
  const double rhs = -pf_inverse([](double x) { return (1 - 2 * x * x) * std::exp(-x * x); });
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
}

TEST_CASE("derivative_of_x_phi") {
  const GaussPoly g = GaussPoly::standard(1);
  CHECK(derivative_of_x_phi(g, 0).poly() == parse_poly("1 - 2*t1^2", 1));
  const GaussPoly xg = g.with_poly(parse_poly("t1", 1));
  CHECK(derivative_of_x_phi(xg, 0).poly() == parse_poly("2*t1 - 2*t1^3", 1));
  const GaussPoly shifted = parse_testfn("gauss(x1^2 + 1; c=1; w=2)", 1);
  CHECK(derivative_of_x_phi(shifted, 0).poly().degree() == 4);
  CHECK(derivative_of_x_phi(shifted, 0).same_envelope(shifted));
}

TEST_CASE("adjoint_check examples") {
  const auto suite = standard_suite(1);
  for (unsigned k = 0; k <= 4; ++k)
    for (const auto& phi : suite) CHECK(adjoint_check(Atom1D::delta(k), phi, 0, 1e-9) <= 1e-6);
  for (const auto& phi : suite) {
    CHECK(adjoint_check(Atom1D::monlog(3, 0, 1), phi, 0, 1e-9) <= 1e-6);
    CHECK(adjoint_check(Atom1D::monlog(-2, 1, -1), phi, 0, 1e-9) <= 1e-6);
  }
  // Atom placed in the second coordinate of a 2-D test function.
  const auto suite2 = standard_suite(2);
  CHECK(adjoint_check(Atom1D::monlog(-2, 0, 1), suite2[4], 1, 1e-9) <= 1e-6);
}

TEST_CASE("compare_symbolic_numeric") {
  const auto suite = standard_suite(1);
  const std::vector<GaussPoly> five(suite.begin(), suite.begin() + 5);
  CHECK(compare_symbolic_numeric(parse_poly("t1 + 1", 1), parse_dist("x1^-1*H(x1)", 1), parse_dist("delta(x1,0)", 1),
                                 five, 1e-8) <= 1e-6);
  CHECK(compare_symbolic_numeric(parse_poly("t1", 1), parse_dist("x1", 1), parse_dist("x1", 1), five, 1e-8) <= 1e-6);
  // A wrong right-hand side shows up.
  CHECK(compare_symbolic_numeric(parse_poly("t1 + 1", 1), parse_dist("x1^-1*H(x1)", 1),
                                 parse_dist("2*delta(x1,0)", 1), five, 1e-8) > 0.1);
}

TEST_CASE("suite shape") {
  CHECK(standard_suite(1).size() == 10);
  CHECK(standard_suite(3).size() == 10);
  CHECK(adjoint_generator_suite().size() == 77);
}

TEST_CASE("integrate_adaptive") {
  const auto r = integrate_adaptive([](double x) { return std::sin(x); }, 0.0, std::numbers::pi, 1e-12);
  CHECK(r.value == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(r.error <= 1e-12);
  CHECK_THROWS_AS(integrate_adaptive([](double x) { return 1.0 / std::sqrt(std::abs(x - 0.3)); }, 0.0, 1.0, 1e-15, 50),
                  Error);
}
