#include "eulerdist/theta.hpp"

#include <deque>

#include "eulerdist/error.hpp"

namespace eulerdist {

ActionRule theta_rule(const Atom1D& a) {
  ActionRule rule{a, {}};
  auto& out = rule.output;
  if (a.is_delta()) {
    out.emplace_back(Rational(-static_cast<long>(a.k) - 1), a);
    return rule;
  }
  if (a.n != 0) out.emplace_back(Rational(a.n), a);
  if (a.p >= 1) {
    out.emplace_back(Rational(a.p), Atom1D::monlog(a.n, a.p - 1, a.sign));
  } else if (a.n <= -1) {
    // Boundary terms of the inner Taylor subtraction.
    const unsigned nu = static_cast<unsigned>(-a.n);
    for (unsigned i = 0; i < nu; ++i) {
      Rational c = inverse_factorial(i);
      if (a.sign == 1 && (i % 2 == 1)) c = -c;
      out.emplace_back(c, Atom1D::delta(i));
    }
  }
  return rule;
}

AtomCombination apply_theta(const Atom1D& a) { return theta_rule(a).output; }

DistExpr apply_theta(std::size_t j, const DistExpr& e) {
  if (j >= e.dim()) throw Error(ErrorKind::Dimension, "theta coordinate out of range");
  TermAccumulator acc(e.dim());
  for (const auto& t : e.terms()) {
    for (const auto& [c, atom] : apply_theta(t.factors[j])) {
      Factors f = t.factors;
      f[j] = atom;
      acc.add(f, t.coeff * c);
    }
  }
  return acc.finish();
}

namespace {

// theta^a applied to one atom for a = 0..max_power.
std::vector<AtomCombination> theta_powers(const Atom1D& atom, unsigned max_power) {
  std::vector<AtomCombination> powers;
  powers.push_back({{Rational(1), atom}});
  for (unsigned a = 1; a <= max_power; ++a) {
    std::map<Atom1D, Rational> acc;
    for (const auto& [c, x] : powers.back())
      for (const auto& [c2, y] : apply_theta(x)) acc[y] += c * c2;
    AtomCombination next;
    for (const auto& [x, c] : acc)
      if (c != 0) next.emplace_back(c, x);
    powers.push_back(std::move(next));
  }
  return powers;
}

}  // namespace

DistExpr apply_polynomial(const Polynomial& p, const DistExpr& e) {
  if (p.dim() != e.dim()) {
    throw Error(ErrorKind::Dimension, "polynomial has " + std::to_string(p.dim()) +
                                          " variables but the expression has dimension " +
                                          std::to_string(e.dim()));
  }
  const std::size_t d = e.dim();
  TermAccumulator acc(d);
  if (p.is_zero()) return acc.finish();

  std::vector<unsigned> max_power(d);
  for (std::size_t j = 0; j < d; ++j) max_power[j] = p.degree_in(j);

  for (const auto& t : e.terms()) {
    std::vector<std::vector<AtomCombination>> powers(d);
    for (std::size_t j = 0; j < d; ++j) powers[j] = theta_powers(t.factors[j], max_power[j]);

    for (const auto& [alpha, c_alpha] : p.terms()) {
      // Tensor product of the per-coordinate combinations.
      std::vector<std::pair<Rational, Factors>> partial{{t.coeff * c_alpha, Factors{}}};
      for (std::size_t j = 0; j < d; ++j) {
        std::vector<std::pair<Rational, Factors>> next;
        for (const auto& [c, f] : partial) {
          for (const auto& [c2, atom] : powers[j][alpha[j]]) {
            Factors g = f;
            g.push_back(atom);
            next.emplace_back(c * c2, std::move(g));
          }
        }
        partial = std::move(next);
      }
      for (const auto& [c, f] : partial) acc.add(f, c);
    }
  }
  return acc.finish();
}

bool equal(const DistExpr& a, const DistExpr& b) {
  if (a.dim() != b.dim()) return false;
  return canonicalize(a) == canonicalize(b);
}

AtomSet closure(const AtomSet& atoms) {
  AtomSet seen = atoms;
  std::deque<Atom1D> queue(atoms.begin(), atoms.end());
  while (!queue.empty()) {
    Atom1D a = queue.front();
    queue.pop_front();
    for (const auto& [c, b] : apply_theta(a)) {
      if (seen.insert(b).second) queue.push_back(b);
    }
  }
  return seen;
}

std::vector<AtomSet> closure(const std::vector<AtomSet>& atoms) {
  std::vector<AtomSet> out;
  out.reserve(atoms.size());
  for (const auto& s : atoms) out.push_back(closure(s));
  return out;
}

}  // namespace eulerdist
