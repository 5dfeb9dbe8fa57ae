#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "eulerdist/dist.hpp"
#include "eulerdist/polynomial.hpp"

namespace eulerdist {

/// Gaussian-polynomial test function
///   phi(x) = poly(x) * exp(-sum_j (x_j - center_j)^2 / width^2).
/// Centers and width are exact rationals so derivatives and coordinate
/// multiplication stay exact.
class GaussPoly {
 public:
  GaussPoly(Polynomial poly, std::vector<Rational> center, Rational width);

  /// exp(-|x|^2) in `dim` variables.
  static GaussPoly standard(std::size_t dim);

  std::size_t dim() const noexcept { return poly_.dim(); }
  const Polynomial& poly() const noexcept { return poly_; }
  const std::vector<Rational>& center() const noexcept { return center_; }
  const Rational& width() const noexcept { return width_; }

  double value(std::span<const double> x) const;

  GaussPoly derivative(std::size_t j) const;
  GaussPoly times_coordinate(std::size_t j) const;
  /// Same envelope, polynomial replaced.
  GaussPoly with_poly(Polynomial poly) const;

  bool same_envelope(const GaussPoly& other) const;

 private:
  Polynomial poly_;
  std::vector<Rational> center_;
  Rational width_;
};

/// d/dx_j (x_j phi).
GaussPoly derivative_of_x_phi(const GaussPoly& phi, std::size_t j);

/// P(-d) phi, i.e. sum_alpha c_alpha (-1)^|alpha| d^alpha phi.
GaussPoly apply_reflected_operator(const Polynomial& p, const GaussPoly& phi);

/// Ten 1-D test functions with varied centers, widths and polynomial
/// degrees up to 4; for dim > 1 the j-th member is a product over
/// coordinates of rotated members of the 1-D list.
std::vector<GaussPoly> standard_suite(std::size_t dim);

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  /// Error level below which the estimate is dominated by rounding
  /// (a fixed number of ulps of the integral of |f|).
  double roundoff_floor = 0.0;
  std::size_t evaluations = 0;
};

/// Global adaptive Gauss-Kronrod (7/15) on [a, b]: the panel with the largest
/// error estimate is bisected until the summed estimate is <= abs_tol or
/// has reached the roundoff floor.
/// Refinement order is deterministic, so lowering abs_tol only continues the
/// same sequence. Throws QuadratureNoConvergence after `max_panels`.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    double abs_tol, std::size_t max_panels = 4000);

/// <A, x^a exp(-(x - c)^2 / w^2)> for a single atom, with the finite-part
/// regularization: for n = -v <= -1,
///   int_0^1 x^n log^p x [psi(x) - sum_{i<v} psi^(i)(0) x^i / i!] dx
///     + int_1^inf x^n log^p x psi(x) dx,
/// the s = -1 atom pairing through x -> -x, and Delta(k) as (-1)^k psi^(k)(0).
QuadratureResult pair_atom(const Atom1D& atom, unsigned a, double c, double w, double tol);

/// <e, phi> factor by factor; the estimate's error must come in under tol,
/// or under the roundoff floor when that is larger.
QuadratureResult pair_with_error(const DistExpr& e, const GaussPoly& phi, double tol);

double pair(const DistExpr& e, const GaussPoly& phi, double tol);

/// |<theta_j A, phi> + <A, (x_j phi)'>| for atom A placed in coordinate j of
/// phi's space; the remaining coordinates carry the constant 1.
double adjoint_check(const Atom1D& atom, const GaussPoly& phi, std::size_t j, double tol);

/// max over the suite of |<P(theta)U - T, phi>|, with P(theta)U symbolic.
double compare_symbolic_numeric(const Polynomial& p, const DistExpr& u, const DistExpr& t,
                                std::span<const GaussPoly> suite, double tol);

/// Atoms with |n| <= 4, p <= 3, both signs, and Delta(k) for k <= 4.
std::vector<Atom1D> adjoint_generator_suite();

}  // namespace eulerdist
