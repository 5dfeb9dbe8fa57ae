#include <doctest.h>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <cmath>
#include <numbers>

#include "eulerdist/error.hpp"
#include "eulerdist/text.hpp"
#include "eulerdist/wagner.hpp"

using namespace eulerdist;

namespace {

Polynomial P(const char* src, std::size_t dim) { return parse_poly(src, dim); }

}  // namespace

TEST_CASE("choose_eta") {
  CHECK(choose_eta(P("t1^2 + t2^2 - 1", 2)) == std::vector<long>{1, 0});
  CHECK(choose_eta(P("t1*t2", 2)) == std::vector<long>{1, 1});
  CHECK(choose_eta(P("t1", 1)) == std::vector<long>{1});
}

TEST_CASE("wagner_coefficients") {
  const std::vector<Rational> l1 = {1, 2};
  CHECK(wagner_coefficients(1, l1) == std::vector<Rational>{-1, 1});
  const std::vector<Rational> l0 = {1};
  CHECK(wagner_coefficients(0, l0) == std::vector<Rational>{1});
  const std::vector<Rational> l2 = {1, 2, 3};
  CHECK(wagner_coefficients(2, l2) == std::vector<Rational>{Rational(1, 2), -1, Rational(1, 2)});
  const std::vector<Rational> dup = {1, 1};
  CHECK_THROWS_AS(wagner_coefficients(1, dup), Error);
}

TEST_CASE("pair_E for d/dx is the Heaviside kernel") {
  // An independent half-line quadrature of chi gives the pairing with H.
  const Polynomial p = P("t1", 1);
  const WagnerParams w = wagner_params(p);
  const GaussPoly chi = parse_testfn("gauss(1 + x1; c=1/2; w=1)", 1);
  boost::math::quadrature::exp_sinh<double> q;
  const double expected = q.integrate([&](double x) { return chi.value(std::span<const double>(&x, 1)); }, 0.0, INFINITY);
  CHECK(pair_E(p, w, chi, FourierGrid{4096, 40.0}).value == doctest::Approx(expected).epsilon(1e-6));
}

TEST_CASE("pair_E basics") {
  const Polynomial p = P("t1^2 + t2^2 - 1", 2);
  const GaussPoly zero = GaussPoly::standard(2).with_poly(Polynomial(2));
  CHECK(pair_E(p, wagner_params(p), zero, FourierGrid{64, 20.0}).value == 0.0);
  const PairEResult r = pair_E(p, wagner_params(p), GaussPoly::standard(2), FourierGrid{128, 20.0});
  CHECK(r.max_modulus_defect < 1e-12);
  CHECK(r.offset_cells == 0.5);
}

TEST_CASE("me_check examples") {
  const GaussPoly g1 = GaussPoly::standard(1);
  CHECK(me_check(P("t1", 1), g1, FourierGrid{4096, 40.0}).residual <= 1e-4);
  CHECK(me_check(P("t1^2", 1), g1, FourierGrid{4096, 40.0}).residual <= 1e-3);
  const MeCheck c = me_check(P("t1^2 + t2^2 - 1", 2), GaussPoly::standard(2), FourierGrid{256, 40.0});
  CHECK(c.residual <= 1e-3);
  CHECK(c.phi_at_zero == doctest::Approx(1.0));
}

TEST_CASE("fourier_transform of the Gaussian") {
  // Unitary convention: exp(-x^2) -> exp(-zeta^2 / 4) / sqrt(2)
  const GaussPoly g = GaussPoly::standard(1);
  for (double x : {0.0, 0.7, -2.0}) {
    const std::complex<double> z(x, 0.5);
    const auto v = fourier_transform(g, std::span<const std::complex<double>>(&z, 1));
    const auto e = std::exp(-z * z / 4.0) / std::sqrt(2.0);
    CHECK(std::abs(v - e) < 1e-13);
  }
}

TEST_CASE("y_seminorm") {
  const GaussPoly g = GaussPoly::standard(1);
  CHECK(y_seminorm(g, {0}, 1.0) == doctest::Approx(std::exp(0.25)).epsilon(1e-4));
  CHECK(y_seminorm(g, {0}, 0.0) == doctest::Approx(1.0));
  const auto constant = [](double) { return 1.0; };
  CHECK(y_seminorm(constant, 0, 1.0, SampleBox{5.0, 0.01}) < y_seminorm(constant, 0, 1.0, SampleBox{10.0, 0.01}));
}

TEST_CASE("exp_conjugation_check") {
  const std::vector<std::vector<double>> origin = {{0.0}};
  CHECK(exp_conjugation_check(P("t1", 1), parse_dist("x1*H(x1)", 1), origin) <= 1e-6);
  const std::vector<std::vector<double>> pts = {{-0.5}, {0.0}, {0.8}};
  CHECK(exp_conjugation_check(P("t1^2", 1), parse_dist("x1^2*H(x1)", 1), pts) <= 1e-5);
  const std::vector<std::vector<double>> pts2 = {{0.1, -0.3}, {0.5, 0.5}};
  CHECK(exp_conjugation_check(P("t1*t2", 2), parse_dist("x1*x2*log(x1)*H(x1)*H(x2)", 2), pts2) <= 1e-4);
  CHECK_THROWS_AS(exp_conjugation_check(P("t1", 1), parse_dist("delta(x1,0)", 1), origin), Error);
}

TEST_CASE("hy_strip_check") {
  const GaussPoly g = GaussPoly::standard(1);
  CHECK(hy_strip_check(g, 2).decaying);
  CHECK(hy_strip_check(g.with_poly(P("t1", 1)), 2).decaying);
  const auto slow = [](std::span<const std::complex<double>> z) { return 1.0 / (1.0 + z[0] * z[0]); };
  CHECK_FALSE(hy_strip_check(slow, 1, 2).decaying);
}
