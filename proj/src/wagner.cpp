#include "eulerdist/wagner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>

#include "eulerdist/error.hpp"
#include "eulerdist/linear.hpp"
#include "eulerdist/theta.hpp"

namespace eulerdist {

namespace {

using cplx = std::complex<double>;

constexpr double kPoleThreshold = 1e-12;
constexpr double kModulusTolerance = 1e-12;

// Lattice vectors with |eta|_1 == level, lexicographically descending.
void lattice_level(std::size_t dim, long level, std::vector<std::vector<long>>& out) {
  std::vector<long> cur(dim, 0);
  auto rec = [&](auto&& self, std::size_t j, long left) -> void {
    if (j + 1 == dim) {
      if (left == 0) {
        cur[j] = 0;
        out.push_back(cur);
      } else {
        cur[j] = left;
        out.push_back(cur);
        cur[j] = -left;
        out.push_back(cur);
      }
      return;
    }
    for (long v = left; v >= -left; --v) {
      cur[j] = v;
      self(self, j + 1, left - std::abs(v));
    }
  };
  rec(rec, 0, level);
}

Rational eval_at_lattice(const Polynomial& p, const std::vector<long>& eta) {
  std::vector<Rational> point;
  point.reserve(eta.size());
  for (long v : eta) point.emplace_back(v);
  return p.eval(point);
}

// Pairwise summation, fixed shape for a given length.
template <class T>
T tree_sum(std::span<const T> v) {
  if (v.empty()) return T{};
  if (v.size() <= 8) {
    T s{};
    for (const auto& x : v) s += x;
    return s;
  }
  const std::size_t half = v.size() / 2;
  return tree_sum(v.subspan(0, half)) + tree_sum(v.subspan(half));
}

// int e^{i xi x} x^k exp(-(x - c)^2 / w^2) dx for k = 0..kmax.
std::vector<cplx> shifted_moments(cplx xi, double c, double w, unsigned kmax) {
  const cplx iu(0.0, 1.0);
  std::vector<cplx> j(kmax + 1);
  j[0] = w * std::sqrt(std::numbers::pi) * std::exp(-xi * xi * (w * w / 4.0));
  if (kmax >= 1) j[1] = (w * w / 2.0) * (iu * xi * j[0]);
  for (unsigned k = 1; k < kmax; ++k) j[k + 1] = (w * w / 2.0) * (iu * xi * j[k] + double(k) * j[k - 1]);

  const cplx phase = std::exp(iu * xi * c);
  std::vector<cplx> m(kmax + 1);
  for (unsigned k = 0; k <= kmax; ++k) {
    cplx s = 0.0;
    double binom = 1.0;
    for (unsigned i = 0; i <= k; ++i) {
      s += binom * std::pow(c, double(k - i)) * j[i];
      binom = binom * double(k - i) / double(i + 1);
    }
    m[k] = phase * s;
  }
  return m;
}

struct PolyTerms {
  std::vector<MultiIndex> alphas;
  std::vector<double> coeffs;
  std::vector<unsigned> max_degree;
};

PolyTerms flatten(const Polynomial& p) {
  PolyTerms t;
  t.max_degree.assign(p.dim(), 0);
  for (const auto& [alpha, c] : p.terms()) {
    t.alphas.push_back(alpha);
    t.coeffs.push_back(to_double(c));
    for (std::size_t j = 0; j < p.dim(); ++j) t.max_degree[j] = std::max(t.max_degree[j], alpha[j]);
  }
  return t;
}

// (2 pi)^{-d/2} K int e^{i xi.x} poly(x) exp(-|x - c|^2 / w^2) dx, where the
// per-axis moment tables are already evaluated at xi.
cplx combine(const PolyTerms& terms, const std::vector<const std::vector<cplx>*>& moments) {
  cplx s = 0.0;
  for (std::size_t t = 0; t < terms.alphas.size(); ++t) {
    cplx prod = terms.coeffs[t];
    for (std::size_t j = 0; j < moments.size(); ++j) prod *= (*moments[j])[terms.alphas[t][j]];
    s += prod;
  }
  return s;
}

void check_dims(const Polynomial& p, const GaussPoly& phi) {
  if (p.dim() != phi.dim()) throw Error(ErrorKind::Dimension, "operator and test function dimensions differ");
}

}  // namespace

std::vector<long> choose_eta(const Polynomial& p) {
  if (p.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "P must be a non-trivial polynomial");
  const Polynomial pm = principal_part(p);
  for (long level = 1;; ++level) {
    std::vector<std::vector<long>> candidates;
    lattice_level(p.dim(), level, candidates);
    for (const auto& eta : candidates)
      if (eval_at_lattice(pm, eta) != 0) return eta;
  }
}

std::vector<Rational> wagner_product_formula(std::span<const Rational> lambda) {
  std::vector<Rational> a(lambda.size());
  for (std::size_t j = 0; j < lambda.size(); ++j) {
    Rational denom(1);
    for (std::size_t k = 0; k < lambda.size(); ++k)
      if (k != j) denom *= lambda[j] - lambda[k];
    if (denom == 0) throw Error(ErrorKind::DuplicateLambda, "lambda values must be pairwise distinct");
    a[j] = Rational(1) / denom;
  }
  return a;
}

std::vector<Rational> wagner_coefficients(unsigned m, std::span<const Rational> lambda) {
  if (lambda.size() != m + 1)
    throw Error(ErrorKind::InvalidArgument, "need exactly m + 1 lambda values");
  for (std::size_t i = 0; i < lambda.size(); ++i)
    for (std::size_t k = i + 1; k < lambda.size(); ++k)
      if (lambda[i] == lambda[k])
        throw Error(ErrorKind::DuplicateLambda, "lambda values must be pairwise distinct");

  RationalMatrix v(m + 1, std::vector<Rational>(m + 1));
  std::vector<Rational> rhs(m + 1, Rational(0));
  rhs[m] = 1;
  for (unsigned i = 0; i <= m; ++i)
    for (unsigned j = 0; j <= m; ++j) v[i][j] = power(lambda[j], i);
  auto a = solve_exact(std::move(v), std::move(rhs));
  if (!a) throw Error(ErrorKind::Internal, "Vandermonde system is singular");
  if (*a != wagner_product_formula(lambda))
    throw Error(ErrorKind::Internal, "Vandermonde solution disagrees with the product formula");
  return *a;
}

WagnerParams wagner_params(const Polynomial& p) {
  WagnerParams w;
  w.m = static_cast<unsigned>(p.degree());
  w.eta = choose_eta(p);
  for (unsigned j = 0; j <= w.m; ++j) w.lambda.emplace_back(j + 1);
  w.a = wagner_coefficients(w.m, w.lambda);
  std::vector<long> two_eta = w.eta;
  for (auto& v : two_eta) v *= 2;
  w.normalizer = eval_at_lattice(principal_part(p), two_eta);
  return w;
}

namespace {

std::optional<PairEResult> pair_E_on_grid(const Polynomial& p, const WagnerParams& params,
                                          const GaussPoly& chi, const FourierGrid& grid, double offset) {
  const std::size_t d = p.dim();
  const std::size_t n = grid.n;
  const double h = 2.0 * grid.cutoff / static_cast<double>(n);
  std::vector<double> axis(n);
  for (std::size_t i = 0; i < n; ++i) axis[i] = -grid.cutoff + (static_cast<double>(i) + offset) * h;

  std::size_t total = 1;
  for (std::size_t j = 0; j < d; ++j) total *= n;

  const double w = to_double(chi.width());
  const PolyTerms terms = flatten(chi.poly());
  PairEResult out;
  out.offset_cells = offset;
  out.nodes = total;

  std::vector<cplx> per_lambda;
  double magnitude = 0.0;
  for (std::size_t l = 0; l < params.lambda.size(); ++l) {
    const double lambda = to_double(params.lambda[l]);
    std::vector<double> b(d);
    double bc = 0.0;
    double bb = 0.0;
    std::vector<double> center(d);
    for (std::size_t j = 0; j < d; ++j) {
      b[j] = lambda * static_cast<double>(params.eta[j]);
      const double c = to_double(chi.center()[j]);
      bc += b[j] * c;
      bb += b[j] * b[j];
      center[j] = c + b[j] * w * w / 2.0;
    }
    // e^{b.x} exp(-|x - c|^2/w^2) = K exp(-|x - c'|^2/w^2)
    const double k_factor = std::exp(bc + bb * w * w / 4.0);

    // Separable moment tables per axis and node.
    std::vector<std::vector<std::vector<cplx>>> tables(d, std::vector<std::vector<cplx>>(n));
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t i = 0; i < n; ++i)
        tables[j][i] = shifted_moments(cplx(axis[i], 0.0), center[j], w, terms.max_degree[j]);

    std::vector<cplx> values(total);
    std::vector<std::size_t> idx(d, 0);
    std::vector<cplx> z(d);
    std::vector<const std::vector<cplx>*> moments(d);
    for (std::size_t node = 0; node < total; ++node) {
      for (std::size_t j = 0; j < d; ++j) {
        z[j] = cplx(b[j], axis[idx[j]]);
        moments[j] = &tables[j][idx[j]];
      }
      const cplx pz = p.eval(std::span<const cplx>(z));
      if (std::abs(pz) < kPoleThreshold) return std::nullopt;
      const cplx g = std::conj(pz) / pz;
      out.max_modulus_defect = std::max(out.max_modulus_defect, std::abs(std::abs(g) - 1.0));
      values[node] = g * combine(terms, moments);
      for (std::size_t j = d; j-- > 0;) {
        if (++idx[j] < n) break;
        idx[j] = 0;
      }
    }
    const cplx integral = tree_sum(std::span<const cplx>(values)) * std::pow(h, double(d));
    double abs_sum = 0.0;
    for (const auto& v : values) abs_sum += std::abs(v);
    magnitude += std::abs(to_double(params.a[l])) * k_factor * abs_sum * std::pow(h, double(d));
    per_lambda.push_back(to_double(params.a[l]) * k_factor * integral);
  }
  const double two_pi_d = std::pow(2.0 * std::numbers::pi, double(d));
  // One (2 pi)^{-d/2} from the transform of e^{b.x} chi, one from the
  // unitary normalization of F^-1 G.
  const cplx total_sum = tree_sum(std::span<const cplx>(per_lambda)) / two_pi_d;
  out.value = total_sum.real() / to_double(params.normalizer);
  out.magnitude = magnitude / two_pi_d / std::abs(to_double(params.normalizer));
  if (out.max_modulus_defect > kModulusTolerance)
    throw Error(ErrorKind::Internal, "multiplier modulus deviates from 1");
  return out;
}

}  // namespace

PairEResult pair_E(const Polynomial& p, const WagnerParams& params, const GaussPoly& chi,
                   const FourierGrid& grid) {
  check_dims(p, chi);
  if (p.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "P must be a non-trivial polynomial");
  if (grid.n == 0 || !(grid.cutoff > 0)) throw Error(ErrorKind::InvalidArgument, "grid needs N >= 1 and R > 0");
  if (params.eta.size() != p.dim() || params.a.size() != params.lambda.size())
    throw Error(ErrorKind::InvalidArgument, "inconsistent Wagner parameters");
  if (chi.poly().is_zero()) {
    PairEResult zero;
    return zero;
  }
  for (double offset : {0.0, 0.5})
    if (auto r = pair_E_on_grid(p, params, chi, grid, offset)) return *r;
  throw Error(ErrorKind::PoleOnGrid, "P(i xi + lambda eta) vanishes on both the grid and its half-cell shift");
}

MeCheck me_check(const Polynomial& p, const GaussPoly& phi, const FourierGrid& grid) {
  check_dims(p, phi);
  const WagnerParams params = wagner_params(p);
  const GaussPoly chi = apply_reflected_operator(p, phi);
  MeCheck out;
  out.detail = pair_E(p, params, chi, grid);
  out.pairing = out.detail.value;
  const std::vector<double> origin(p.dim(), 0.0);
  out.phi_at_zero = phi.value(origin);
  out.residual = std::abs(out.pairing - out.phi_at_zero);
  out.roundoff_floor = 64.0 * std::numeric_limits<double>::epsilon() * out.detail.magnitude;
  return out;
}

std::complex<double> fourier_transform(const GaussPoly& phi, std::span<const std::complex<double>> zeta) {
  const std::size_t d = phi.dim();
  if (zeta.size() != d) throw Error(ErrorKind::Dimension, "point dimension mismatch");
  const double w = to_double(phi.width());
  const PolyTerms terms = flatten(phi.poly());
  std::vector<std::vector<cplx>> tables(d);
  std::vector<const std::vector<cplx>*> moments(d);
  for (std::size_t j = 0; j < d; ++j) {
    tables[j] = shifted_moments(-zeta[j], to_double(phi.center()[j]), w, terms.max_degree[j]);
    moments[j] = &tables[j];
  }
  return combine(terms, moments) / std::pow(2.0 * std::numbers::pi, double(d) / 2.0);
}

// ---------------------------------------------------------------------------
// Y seminorms

double y_seminorm(const GaussPoly& f, const MultiIndex& alpha, double k, const SampleBox& box) {
  if (alpha.size() != f.dim()) throw Error(ErrorKind::Dimension, "multi-index dimension mismatch");
  if (!(box.step > 0) || !(box.half_width > 0)) throw Error(ErrorKind::InvalidArgument, "bad sample box");
  GaussPoly g = f;
  for (std::size_t j = 0; j < alpha.size(); ++j)
    for (unsigned i = 0; i < alpha[j]; ++i) g = g.derivative(j);

  const std::size_t d = f.dim();
  const auto n = static_cast<std::size_t>(std::llround(2.0 * box.half_width / box.step)) + 1;
  std::vector<std::size_t> idx(d, 0);
  std::vector<double> x(d);
  double best = 0.0;
  while (true) {
    double l1 = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
      x[j] = -box.half_width + static_cast<double>(idx[j]) * box.step;
      l1 += std::abs(x[j]);
    }
    best = std::max(best, std::abs(g.value(x)) * std::exp(k * l1));
    std::size_t j = d;
    while (j-- > 0) {
      if (++idx[j] < n) break;
      idx[j] = 0;
    }
    if (j == static_cast<std::size_t>(-1)) break;
  }
  return best;
}

double y_seminorm(const std::function<double(double)>& f, unsigned order, double k, const SampleBox& box) {
  if (!(box.step > 0) || !(box.half_width > 0)) throw Error(ErrorKind::InvalidArgument, "bad sample box");
  const double h = box.step;
  auto derivative = [&](double x) {
    double s = 0.0;
    double binom = 1.0;
    for (unsigned i = 0; i <= order; ++i) {
      const double sign = (i % 2 == 0) ? 1.0 : -1.0;
      s += sign * binom * f(x + (0.5 * order - i) * h);
      binom = binom * double(order - i) / double(i + 1);
    }
    return s / std::pow(h, double(order));
  };
  const auto n = static_cast<std::size_t>(std::llround(2.0 * box.half_width / h)) + 1;
  double best = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = -box.half_width + static_cast<double>(i) * h;
    best = std::max(best, std::abs(derivative(x)) * std::exp(k * std::abs(x)));
  }
  return best;
}

// ---------------------------------------------------------------------------
// Exponential conjugation

double evaluate_on_quadrant(const DistExpr& f, std::span<const double> y) {
  if (y.size() != f.dim()) throw Error(ErrorKind::Dimension, "point dimension mismatch");
  double s = 0.0;
  for (const auto& t : f.terms()) {
    double v = to_double(t.coeff);
    for (std::size_t j = 0; j < y.size() && v != 0.0; ++j) {
      const Atom1D& a = t.factors[j];
      if (!(y[j] > 0)) throw Error(ErrorKind::InvalidArgument, "point must lie in the open positive quadrant");
      if (a.is_delta() || a.sign == -1) {
        v = 0.0;
      } else {
        v *= std::pow(y[j], a.n) * std::pow(std::log(y[j]), double(a.p));
      }
    }
    s += v;
  }
  return s;
}

namespace {

// P(d) g at x by nested central differences with step h.
double difference_operator(const Polynomial& p, const std::function<double(std::span<const double>)>& g,
                           std::span<const double> x, double h) {
  const std::size_t d = x.size();
  double total = 0.0;
  std::vector<double> at(d);
  for (const auto& [alpha, c] : p.terms()) {
    std::vector<unsigned> i(d, 0);
    double s = 0.0;
    while (true) {
      double weight = 1.0;
      for (std::size_t j = 0; j < d; ++j) {
        const unsigned m = alpha[j];
        weight *= to_double(binomial(m, i[j])) * ((i[j] % 2 == 0) ? 1.0 : -1.0);
        at[j] = x[j] + (0.5 * m - i[j]) * h;
      }
      s += weight * g(at);
      std::size_t j = d;
      while (j-- > 0) {
        if (++i[j] <= alpha[j]) break;
        i[j] = 0;
      }
      if (j == static_cast<std::size_t>(-1)) break;
    }
    total += to_double(c) * s / std::pow(h, double(total_degree(alpha)));
  }
  return total;
}

}  // namespace

double exp_conjugation_check(const Polynomial& p, const DistExpr& f, std::span<const std::vector<double>> points,
                             const ConjugationOptions& options) {
  if (p.dim() != f.dim()) throw Error(ErrorKind::Dimension, "operator and function dimensions differ");
  if (!(options.step > 0)) throw Error(ErrorKind::InvalidArgument, "step must be positive");
  for (const auto& t : f.terms())
    for (const auto& a : t.factors)
      if (a.is_delta() || a.sign != 1 || a.n < 0)
        throw Error(ErrorKind::UnsupportedInput, "conjugation check needs MonLog(n >= 0, p, +) factors only");

  const DistExpr image = apply_polynomial(p, f);
  const std::size_t d = f.dim();
  auto composed = [&](std::span<const double> x) {
    std::vector<double> y(d);
    for (std::size_t j = 0; j < d; ++j) y[j] = std::exp(x[j]);
    return evaluate_on_quadrant(f, y);
  };

  double worst = 0.0;
  std::vector<double> y(d);
  for (const auto& x : points) {
    if (x.size() != d) throw Error(ErrorKind::Dimension, "point dimension mismatch");
    for (std::size_t j = 0; j < d; ++j) y[j] = std::exp(x[j]);
    const double lhs = evaluate_on_quadrant(image, y);
    double rhs = difference_operator(p, composed, x, options.step);
    if (options.richardson) {
      const double fine = difference_operator(p, composed, x, 0.5 * options.step);
      rhs = (4.0 * fine - rhs) / 3.0;
    }
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return worst;
}

// ---------------------------------------------------------------------------
// Strip check

StripReport hy_strip_check(const std::function<std::complex<double>(std::span<const std::complex<double>>)>& g,
                           std::size_t dim, unsigned k, const StripOptions& options) {
  if (dim == 0) throw Error(ErrorKind::Dimension, "dimension must be positive");
  if (options.shells < 2 || !(options.cutoff > 0) || !(options.density > 0))
    throw Error(ErrorKind::InvalidArgument, "bad strip sampling options");
  const double step = 1.0 / options.density;
  const auto nx = static_cast<std::size_t>(std::llround(2.0 * options.cutoff * options.density)) + 1;
  const std::size_t ny = (k == 0) ? 1 : std::max<std::size_t>(options.imaginary_samples, 2);
  std::vector<double> xs(nx), ys(ny);
  for (std::size_t i = 0; i < nx; ++i) xs[i] = -options.cutoff + static_cast<double>(i) * step;
  for (std::size_t i = 0; i < ny; ++i)
    ys[i] = (ny == 1) ? 0.0 : -double(k) + 2.0 * double(k) * static_cast<double>(i) / double(ny - 1);

  std::vector<double> radii(options.shells);
  for (std::size_t s = 0; s < options.shells; ++s)
    radii[s] = options.cutoff * (0.5 + 0.5 * static_cast<double>(s) / double(options.shells - 1));

  StripReport report;
  report.shell_max.assign(options.shells, 0.0);
  std::vector<std::size_t> ix(dim, 0), iy(dim, 0);
  std::vector<cplx> zeta(dim);
  while (true) {
    double rho = 0.0;
    double norm2 = 0.0;
    for (std::size_t j = 0; j < dim; ++j) {
      zeta[j] = cplx(xs[ix[j]], ys[iy[j]]);
      rho = std::max(rho, std::abs(xs[ix[j]]));
      norm2 += std::norm(zeta[j]);
    }
    const double v = std::pow(std::sqrt(norm2), double(k)) * std::abs(g(zeta));
    report.max_value = std::max(report.max_value, v);
    for (std::size_t s = 0; s < options.shells; ++s)
      if (std::abs(rho - radii[s]) <= 0.5 * step) report.shell_max[s] = std::max(report.shell_max[s], v);

    // Odometer over real then imaginary indices.
    std::size_t j = 0;
    for (; j < 2 * dim; ++j) {
      auto& counter = (j < dim) ? ix[j] : iy[j - dim];
      const std::size_t limit = (j < dim) ? nx : ny;
      if (++counter < limit) break;
      counter = 0;
    }
    if (j == 2 * dim) break;
  }

  bool monotone = true;
  for (std::size_t s = 0; s + 1 < options.shells; ++s) {
    const double a = report.shell_max[s];
    const double b = report.shell_max[s + 1];
    if (!(b < a || (a == 0.0 && b == 0.0))) monotone = false;
  }
  report.decaying = monotone && report.shell_max.back() <= 0.5 * report.shell_max.front();
  return report;
}

StripReport hy_strip_check(const GaussPoly& phi, unsigned k, const StripOptions& options) {
  return hy_strip_check([&](std::span<const cplx> z) { return fourier_transform(phi, z); }, phi.dim(), k,
                        options);
}

}  // namespace eulerdist
