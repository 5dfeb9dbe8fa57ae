#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "eulerdist/dist.hpp"
#include "eulerdist/pairing.hpp"
#include "eulerdist/polynomial.hpp"

namespace eulerdist {

/// Data of the elementary solution
///   E = 1/P_m(2 eta) sum_j a_j e^{lambda_j eta.x} F^-1[ conj(P(i xi + lambda_j eta)) / P(i xi + lambda_j eta) ].
struct WagnerParams {
  unsigned m = 0;
  std::vector<long> eta;
  std::vector<Rational> lambda;
  std::vector<Rational> a;
  /// P_m(2 eta) = 2^m P_m(eta).
  Rational normalizer;
};

/// Smallest |eta|_1 lattice vector with P_m(eta) != 0. Within one |eta|_1
/// level the candidates are scanned in lexicographically descending order.
std::vector<long> choose_eta(const Polynomial& p);

/// Exact solution of sum_j a_j lambda_j^i = [i == m], 0 <= i <= m. Checked
/// against the product formula a_j = prod_{k != j} 1 / (lambda_j - lambda_k).
std::vector<Rational> wagner_coefficients(unsigned m, std::span<const Rational> lambda);

/// The product formula alone.
std::vector<Rational> wagner_product_formula(std::span<const Rational> lambda);

/// eta from choose_eta, lambda_j = j + 1.
WagnerParams wagner_params(const Polynomial& p);

struct FourierGrid {
  /// Nodes per axis.
  std::size_t n = 4096;
  /// Half width R of the box [-R, R]^d.
  double cutoff = 40.0;
};

struct PairEResult {
  double value = 0.0;
  /// Offset of the first node from -R, in cells (0 or 1/2 after a pole).
  double offset_cells = 0.0;
  /// max over used nodes of ||G_j| - 1|.
  double max_modulus_defect = 0.0;
  std::size_t nodes = 0;
  /// The same sum with every summand replaced by its modulus; rounding
  /// error in `value` scales with it.
  double magnitude = 0.0;
};

/// <E, chi> by the trapezoid rule on the grid, with the transform of
/// e^{lambda eta.x} chi taken in closed form. A node with
/// |P(i xi + lambda_j eta)| < 1e-12 moves the whole grid by half a cell;
/// PoleOnGrid if the shifted grid also hits one.
PairEResult pair_E(const Polynomial& p, const WagnerParams& params, const GaussPoly& chi,
                   const FourierGrid& grid);

struct MeCheck {
  double residual = 0.0;
  double pairing = 0.0;
  double phi_at_zero = 0.0;
  /// 64 ulps of detail.magnitude; residuals below it are rounding.
  double roundoff_floor = 0.0;
  PairEResult detail;
};

/// |<E, P(-d) phi> - phi(0)|.
MeCheck me_check(const Polynomial& p, const GaussPoly& phi, const FourierGrid& grid);

/// Unitary transform (2 pi)^{-d/2} int e^{-i zeta.x} phi(x) dx at complex zeta.
std::complex<double> fourier_transform(const GaussPoly& phi, std::span<const std::complex<double>> zeta);

struct SampleBox {
  double half_width = 10.0;
  double step = 0.01;
};

/// max over the sample grid of |d^alpha f(x)| e^{k |x|_1}; a lower estimate
/// of the Y seminorm.
double y_seminorm(const GaussPoly& f, const MultiIndex& alpha, double k, const SampleBox& box = {});

/// One-dimensional version for a sampled function; d^order f by central
/// differences with step box.step.
double y_seminorm(const std::function<double(double)>& f, unsigned order, double k,
                  const SampleBox& box = {});

struct ConjugationOptions {
  double step = 1e-4;
  bool richardson = true;
};

/// max over points x of |(P(theta) f)(e^x) - P(d)(f o Exp)(x)|, the right
/// side by nested central differences. f may only carry MonLog(n >= 0, p, +)
/// factors.
double exp_conjugation_check(const Polynomial& p, const DistExpr& f,
                             std::span<const std::vector<double>> points,
                             const ConjugationOptions& options = {});

/// f evaluated at a point of the open positive quadrant.
double evaluate_on_quadrant(const DistExpr& f, std::span<const double> y);

struct StripOptions {
  double cutoff = 12.0;
  /// Samples per unit length along the real axes.
  double density = 4.0;
  /// Samples across [-k, k] along each imaginary axis.
  std::size_t imaginary_samples = 5;
  std::size_t shells = 8;
};

struct StripReport {
  double max_value = 0.0;
  /// Box-boundary maxima at radii from cutoff/2 to cutoff.
  std::vector<double> shell_max;
  bool decaying = false;
};

/// Samples |zeta|^k |g(zeta)| on |Im zeta|_inf <= k, |Re zeta|_inf <= cutoff,
/// and reports whether the box-boundary maxima fall monotonically outward
/// with the last at most half the first.
StripReport hy_strip_check(const GaussPoly& phi, unsigned k, const StripOptions& options = {});

StripReport hy_strip_check(const std::function<std::complex<double>(std::span<const std::complex<double>>)>& g,
                           std::size_t dim, unsigned k, const StripOptions& options = {});

}  // namespace eulerdist
