#pragma once

#include <optional>
#include <vector>

#include "eulerdist/rational.hpp"

namespace eulerdist {

using RationalMatrix = std::vector<std::vector<Rational>>;

/// Exact Gauss-Jordan solve of A x = b. Pivot columns are taken left to
/// right and free variables are set to zero, so the returned particular
/// solution is deterministic. nullopt when the system is inconsistent.
std::optional<std::vector<Rational>> solve_exact(RationalMatrix a, std::vector<Rational> b);

}  // namespace eulerdist
