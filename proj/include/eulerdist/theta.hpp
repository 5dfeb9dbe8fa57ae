#pragma once

#include <cstddef>
#include <set>
#include <utility>
#include <vector>

#include "eulerdist/dist.hpp"
#include "eulerdist/polynomial.hpp"

namespace eulerdist {

using AtomCombination = std::vector<std::pair<Rational, Atom1D>>;

/// One row of the theta-action table.
struct ActionRule {
  Atom1D input;
  AtomCombination output;
};

/// theta = x d/dx applied to a single atom. The finite-part rows carry the
/// delta corrections implied by the pairing regularization:
///   theta Pf(x^-v H(x))  = -v Pf(x^-v H(x))  + sum_{i<v} (-1)^i/i! delta^(i)
///   theta Pf(|x|^-v H(-x)) = -v Pf(|x|^-v H(-x)) + sum_{i<v} 1/i! delta^(i)
ActionRule theta_rule(const Atom1D& a);

AtomCombination apply_theta(const Atom1D& a);

/// theta_j applied to every term; other coordinates are untouched.
DistExpr apply_theta(std::size_t j, const DistExpr& e);

/// P(theta) e, canonical.
DistExpr apply_polynomial(const Polynomial& p, const DistExpr& e);

/// Exact equality within the class: canonical forms coincide.
bool equal(const DistExpr& a, const DistExpr& b);

using AtomSet = std::set<Atom1D>;

/// Smallest theta-stable atom set containing `atoms`.
AtomSet closure(const AtomSet& atoms);

/// Per-coordinate closure.
std::vector<AtomSet> closure(const std::vector<AtomSet>& atoms);

}  // namespace eulerdist
