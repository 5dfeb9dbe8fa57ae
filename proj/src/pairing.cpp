#include "eulerdist/pairing.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <queue>
#include <tuple>

#include "eulerdist/error.hpp"
#include "eulerdist/theta.hpp"

namespace eulerdist {

GaussPoly::GaussPoly(Polynomial poly, std::vector<Rational> center, Rational width)
    : poly_(std::move(poly)), center_(std::move(center)), width_(std::move(width)) {
  if (center_.size() != poly_.dim()) throw Error(ErrorKind::Dimension, "center length mismatch");
  if (width_ <= 0) throw Error(ErrorKind::InvalidArgument, "width must be positive");
}

GaussPoly GaussPoly::standard(std::size_t dim) {
  return GaussPoly(Polynomial::constant(dim, Rational(1)), std::vector<Rational>(dim, Rational(0)),
                   Rational(1));
}

double GaussPoly::value(std::span<const double> x) const {
  const double w = to_double(width_);
  double r2 = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    const double u = x[j] - to_double(center_[j]);
    r2 += u * u;
  }
  return poly_.eval(x) * std::exp(-r2 / (w * w));
}

GaussPoly GaussPoly::derivative(std::size_t j) const {
  const Rational k = Rational(2) / (width_ * width_);
  Polynomial shift = Polynomial::variable(dim(), j) - Polynomial::constant(dim(), center_[j]);
  return with_poly(poly_.derivative(j) - k * (shift * poly_));
}

GaussPoly GaussPoly::times_coordinate(std::size_t j) const {
  return with_poly(Polynomial::variable(dim(), j) * poly_);
}

GaussPoly GaussPoly::with_poly(Polynomial poly) const { return GaussPoly(std::move(poly), center_, width_); }

bool GaussPoly::same_envelope(const GaussPoly& other) const {
  return center_ == other.center_ && width_ == other.width_;
}

GaussPoly derivative_of_x_phi(const GaussPoly& phi, std::size_t j) {
  return phi.times_coordinate(j).derivative(j);
}

GaussPoly apply_reflected_operator(const Polynomial& p, const GaussPoly& phi) {
  if (p.dim() != phi.dim()) throw Error(ErrorKind::Dimension, "operator dimension mismatch");
  std::map<MultiIndex, GaussPoly> derivs;
  derivs.emplace(MultiIndex(p.dim(), 0), phi);
  // d^alpha phi, built from the nearest smaller multi-index already known.
  auto get = [&](auto&& self, const MultiIndex& alpha) -> const GaussPoly& {
    auto it = derivs.find(alpha);
    if (it != derivs.end()) return it->second;
    std::size_t j = 0;
    while (alpha[j] == 0) ++j;
    MultiIndex lower = alpha;
    --lower[j];
    GaussPoly next = self(self, lower).derivative(j);
    return derivs.emplace(alpha, std::move(next)).first->second;
  };
  Polynomial sum(p.dim());
  for (const auto& [alpha, c] : p.terms()) {
    const Rational sign = (total_degree(alpha) % 2 == 0) ? Rational(1) : Rational(-1);
    sum += (sign * c) * get(get, alpha).poly();
  }
  return phi.with_poly(std::move(sum));
}

std::vector<GaussPoly> standard_suite(std::size_t dim) {
  struct Shape1D {
    std::vector<std::pair<unsigned, Rational>> poly;
    Rational center;
    Rational width;
  };
  const std::vector<Shape1D> base = {
      {{{0, Rational(1)}}, Rational(0), Rational(1)},
      {{{1, Rational(1)}}, Rational(0), Rational(1)},
      {{{0, Rational(1)}, {1, Rational(1)}, {2, Rational(-1, 2)}}, Rational(1, 2), Rational(1)},
      {{{0, Rational(-1)}, {2, Rational(1)}}, Rational(-1, 2), Rational(3, 2)},
      {{{0, Rational(2)}, {3, Rational(-1, 3)}}, Rational(1), Rational(3, 4)},
      {{{0, Rational(1)}, {1, Rational(-1)}, {4, Rational(1, 4)}}, Rational(-1), Rational(5, 4)},
      {{{1, Rational(3)}, {2, Rational(-2)}}, Rational(3, 2), Rational(1, 2)},
      {{{0, Rational(1)}, {4, Rational(1, 10)}}, Rational(0), Rational(2)},
      {{{0, Rational(-1)}, {1, Rational(1, 2)}, {3, Rational(1)}}, Rational(-3, 2), Rational(1)},
      {{{0, Rational(1, 2)}, {2, Rational(1, 3)}, {4, Rational(-1, 24)}}, Rational(1, 4), Rational(7, 4)},
  };
  std::vector<GaussPoly> suite;
  for (std::size_t m = 0; m < base.size(); ++m) {
    Polynomial poly = Polynomial::constant(dim, Rational(1));
    std::vector<Rational> center(dim);
    for (std::size_t j = 0; j < dim; ++j) {
      const Shape1D& s = base[(m + 3 * j) % base.size()];
      Polynomial factor(dim);
      for (const auto& [deg, c] : s.poly) {
        MultiIndex alpha(dim, 0);
        alpha[j] = deg;
        factor.add_term(alpha, c);
      }
      poly *= factor;
      center[j] = s.center;
    }
    suite.emplace_back(std::move(poly), std::move(center), base[m].width);
  }
  return suite;
}

// ---------------------------------------------------------------------------
// Quadrature

namespace {

// Error estimates below this many ulps of the integral of |f| are roundoff.
constexpr double kRoundoffUlps = 64.0;

struct Panel {
  double a;
  double b;
  double value;
  double error;
  double l1;
};

struct PanelOrder {
  bool operator()(const Panel& x, const Panel& y) const {
    if (x.error != y.error) return x.error < y.error;
    return x.a > y.a;
  }
};

Panel gk_panel(const std::function<double(double)>& f, double a, double b) {
  using GK = boost::math::quadrature::gauss_kronrod<double, 15>;
  double err = 0.0;
  double l1 = 0.0;
  // max_depth 0: a single 15-point Kronrod panel. The reported estimate is
  // for the panel mapped to [-1, 1], so it is rescaled by the half width.
  const double v = GK::integrate(f, a, b, 0, 0.0, &err, &l1);
  return {a, b, v, err * 0.5 * (b - a), l1};
}

}  // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    double abs_tol, std::size_t max_panels) {
  QuadratureResult out;
  if (a == b) return out;
  std::priority_queue<Panel, std::vector<Panel>, PanelOrder> queue;
  constexpr int kInitial = 4;
  double total_err = 0.0;
  double total_l1 = 0.0;
  for (int i = 0; i < kInitial; ++i) {
    const double lo = a + (b - a) * i / kInitial;
    const double hi = (i + 1 == kInitial) ? b : a + (b - a) * (i + 1) / kInitial;
    Panel p = gk_panel(f, lo, hi);
    total_err += p.error;
    total_l1 += p.l1;
    queue.push(p);
  }
  std::size_t panels = kInitial;
  auto floor = [&] { return kRoundoffUlps * std::numeric_limits<double>::epsilon() * total_l1; };
  while (total_err > std::max(abs_tol, floor())) {
    if (panels >= max_panels) {
      throw Error(ErrorKind::QuadratureNoConvergence,
                  "adaptive quadrature stalled with error estimate " + std::to_string(total_err) +
                      " above tolerance " + std::to_string(abs_tol));
    }
    Panel worst = queue.top();
    queue.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    Panel left = gk_panel(f, worst.a, mid);
    Panel right = gk_panel(f, mid, worst.b);
    total_err += left.error + right.error - worst.error;
    total_l1 += left.l1 + right.l1 - worst.l1;
    queue.push(left);
    queue.push(right);
    ++panels;
  }
  // Sum in position order so the result does not depend on heap layout.
  std::vector<Panel> all;
  all.reserve(queue.size());
  while (!queue.empty()) {
    all.push_back(queue.top());
    queue.pop();
  }
  std::sort(all.begin(), all.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
  double err = 0.0;
  for (const auto& p : all) {
    out.value += p.value;
    err += p.error;
  }
  out.error = err;
  out.roundoff_floor = floor();
  out.evaluations = panels * 15;
  return out;
}

// ---------------------------------------------------------------------------
// One-dimensional pairings

namespace {

constexpr int kTaylorTerms = 96;
constexpr double kSeriesRadius = 0.25;
constexpr double kInnerTMax = 64.0;
constexpr double kTailWidths = 9.0;

// psi(x) = x^a exp(-(x - c)^2 / w^2) with its Maclaurin coefficients.
struct Slice {
  unsigned a;
  double c;
  double w;
  std::array<double, kTaylorTerms> taylor{};

  Slice(unsigned power, double center, double width) : a(power), c(center), w(width) {
    std::array<double, kTaylorTerms> g{};
    const double k = 2.0 / (w * w);
    g[0] = std::exp(-c * c / (w * w));
    if (kTaylorTerms > 1) g[1] = k * c * g[0];
    for (int i = 1; i + 1 < kTaylorTerms; ++i) g[i + 1] = k * (c * g[i] - g[i - 1]) / (i + 1);
    for (int i = 0; i + static_cast<int>(a) < kTaylorTerms; ++i) taylor[i + a] = g[i];
  }

  double value(double x) const {
    const double u = (x - c) / w;
    return std::pow(x, static_cast<int>(a)) * std::exp(-u * u);
  }

  // x^-v (psi(x) - sum_{i<v} psi^(i)(0) x^i / i!), stable near 0.
  double remainder_quotient(double x, unsigned v) const {
    if (x <= kSeriesRadius) {
      double sum = 0.0;
      double xp = 1.0;
      for (int i = static_cast<int>(v); i < kTaylorTerms; ++i) {
        const double term = taylor[i] * xp;
        sum += term;
        if (i > static_cast<int>(v) + 8 && std::abs(term) < 1e-18 * (std::abs(sum) + 1e-300)) break;
        xp *= x;
      }
      return sum;
    }
    double poly = 0.0;
    for (int i = static_cast<int>(v) - 1; i >= 0; --i) poly = poly * x + taylor[i];
    return (value(x) - poly) / std::pow(x, static_cast<int>(v));
  }

  // psi^(k)(0)
  double derivative_at_zero(unsigned k) const {
    if (k >= kTaylorTerms) throw Error(ErrorKind::InvalidArgument, "derivative order too large");
    return taylor[k] * std::tgamma(k + 1.0);
  }
};

QuadratureResult pair_positive_half_line(int n, unsigned p, const Slice& s, double tol) {
  const bool finite_part = n <= -1;
  const unsigned v = finite_part ? static_cast<unsigned>(-n) : 0;
  const double ip = static_cast<double>(p);

  // Inner piece on (0, 1) in t = -log x, so log^p x = (-t)^p.
  auto inner = [&](double t) {
    const double x = std::exp(-t);
    const double logp = (p == 0) ? 1.0 : std::pow(-t, ip);
    if (finite_part) return std::exp(-t) * logp * s.remainder_quotient(x, v);
    return std::exp(-(n + 1) * t) * logp * s.value(x);
  };
  QuadratureResult in = integrate_adaptive(inner, 0.0, kInnerTMax, 0.5 * tol);

  QuadratureResult outer;
  const double upper = std::max(1.0, s.c) + kTailWidths * s.w;
  if (upper > 1.0) {
    auto f = [&](double x) {
      const double logp = (p == 0) ? 1.0 : std::pow(std::log(x), ip);
      return std::pow(x, n) * logp * s.value(x);
    };
    outer = integrate_adaptive(f, 1.0, upper, 0.5 * tol);
  }
  return {in.value + outer.value, in.error + outer.error, in.roundoff_floor + outer.roundoff_floor,
          in.evaluations + outer.evaluations};
}

}  // namespace

QuadratureResult pair_atom(const Atom1D& atom, unsigned a, double c, double w, double tol) {
  if (tol <= 0) throw Error(ErrorKind::InvalidArgument, "tolerance must be positive");
  if (atom.is_delta()) {
    const Slice s(a, c, w);
    const double sign = (atom.k % 2 == 0) ? 1.0 : -1.0;
    const double v = sign * s.derivative_at_zero(atom.k);
    const double ulp = 4.0 * std::numeric_limits<double>::epsilon() * std::abs(v);
    return {v, ulp, ulp, 0};
  }
  if (atom.sign == 1) return pair_positive_half_line(atom.n, atom.p, Slice(a, c, w), tol);
  // Reflection: (-x)^a exp(-(-x - c)^2/w^2) = (-1)^a x^a exp(-(x + c)^2/w^2).
  QuadratureResult r = pair_positive_half_line(atom.n, atom.p, Slice(a, -c, w), tol);
  if (a % 2 == 1) r.value = -r.value;
  return r;
}

namespace {

QuadratureResult pair_once(const DistExpr& e, const GaussPoly& phi, double tol_1d) {
  const std::size_t d = e.dim();
  const double w = to_double(phi.width());
  std::vector<double> centers(d);
  for (std::size_t j = 0; j < d; ++j) centers[j] = to_double(phi.center()[j]);

  std::map<std::tuple<std::size_t, Atom1D, unsigned>, QuadratureResult> cache;
  auto one = [&](std::size_t j, const Atom1D& atom, unsigned a) -> const QuadratureResult& {
    auto key = std::make_tuple(j, atom, a);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    return cache.emplace(key, pair_atom(atom, a, centers[j], w, tol_1d)).first->second;
  };

  QuadratureResult total;
  for (const auto& t : e.terms()) {
    const double ct = to_double(t.coeff);
    for (const auto& [alpha, ca] : phi.poly().terms()) {
      double prod = ct * to_double(ca);
      std::vector<const QuadratureResult*> parts(d);
      for (std::size_t j = 0; j < d; ++j) {
        parts[j] = &one(j, t.factors[j], alpha[j]);
        prod *= parts[j]->value;
      }
      // First-order propagation of the per-factor error estimates.
      double err = 0.0;
      double floor = 0.0;
      for (std::size_t j = 0; j < d; ++j) {
        double others = std::abs(ct * to_double(ca));
        for (std::size_t i = 0; i < d; ++i)
          if (i != j) others *= std::abs(parts[i]->value);
        err += others * parts[j]->error;
        floor += others * parts[j]->roundoff_floor;
      }
      total.value += prod;
      total.error += err;
      total.roundoff_floor += floor;
    }
  }
  for (const auto& [key, r] : cache) total.evaluations += r.evaluations;
  return total;
}

}  // namespace

QuadratureResult pair_with_error(const DistExpr& e, const GaussPoly& phi, double tol) {
  if (e.dim() != phi.dim()) throw Error(ErrorKind::Dimension, "pairing dimension mismatch");
  if (tol <= 0) throw Error(ErrorKind::InvalidArgument, "tolerance must be positive");
  const double pieces = static_cast<double>(std::max<std::size_t>(1, e.size() * phi.poly().terms().size()));
  double tol_1d = tol / (10.0 * pieces);
  QuadratureResult r;
  for (int attempt = 0; attempt < 4; ++attempt) {
    r = pair_once(e, phi, tol_1d);
    if (r.error <= std::max(tol, r.roundoff_floor)) return r;
    tol_1d *= 1e-2;
  }
  throw Error(ErrorKind::QuadratureNoConvergence,
              "pairing error estimate " + std::to_string(r.error) + " above tolerance " +
                  std::to_string(tol));
}

double pair(const DistExpr& e, const GaussPoly& phi, double tol) { return pair_with_error(e, phi, tol).value; }

double adjoint_check(const Atom1D& atom, const GaussPoly& phi, std::size_t j, double tol) {
  const std::size_t d = phi.dim();
  if (j >= d) throw Error(ErrorKind::Dimension, "adjoint coordinate out of range");
  // Atom in coordinate j, the constant 1 = H(x) + H(-x) elsewhere.
  DistExpr e = DistExpr::scalar(Rational(1));
  for (std::size_t i = 0; i < d; ++i) {
    DistExpr factor(1);
    if (i == j) {
      factor = DistExpr::single(Rational(1), {atom});
    } else {
      factor = full_monomial(MultiIndex{0});
    }
    e = tensor(e, factor);
  }
  const double lhs = pair(apply_theta(j, e), phi, 0.25 * tol);
  const double rhs = pair(e, derivative_of_x_phi(phi, j), 0.25 * tol);
  return std::abs(lhs + rhs);
}

double compare_symbolic_numeric(const Polynomial& p, const DistExpr& u, const DistExpr& t,
                                std::span<const GaussPoly> suite, double tol) {
  const DistExpr defect = apply_polynomial(p, u) - t;
  double worst = 0.0;
  for (const auto& phi : suite) worst = std::max(worst, std::abs(pair(defect, phi, 0.1 * tol)));
  return worst;
}

std::vector<Atom1D> adjoint_generator_suite() {
  std::vector<Atom1D> atoms;
  for (int s : {1, -1})
    for (int n = -4; n <= 4; ++n)
      for (unsigned p = 0; p <= 3; ++p) atoms.push_back(Atom1D::monlog(n, p, s));
  for (unsigned k = 0; k <= 4; ++k) atoms.push_back(Atom1D::delta(k));
  return atoms;
}

}  // namespace eulerdist
