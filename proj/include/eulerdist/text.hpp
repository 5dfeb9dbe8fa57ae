#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "eulerdist/dist.hpp"
#include "eulerdist/pairing.hpp"
#include "eulerdist/polynomial.hpp"

namespace eulerdist {

/// Polynomial in theta-variables t1..t9:
///   expr  := term (('+' | '-') term)*
///   term  := unary ('*' unary)*
///   unary := ('-' | '+') unary | power
///   power := atom ('^' integer)?
///   atom  := integer ('/' integer)? | 't' digit | '(' expr ')'
/// `dim` fixes the number of variables; 0 takes the largest index used.
Polynomial parse_poly(std::string_view src, std::size_t dim = 0);

/// Same grammar with another variable letter, e.g. 'x' for test functions.
Polynomial parse_poly(std::string_view src, std::size_t dim, char variable);

/// "t1^2*t2 - 3*t1 + 2"
std::string format_poly(const Polynomial& p);

/// Distribution expression in d coordinates: a signed sum of terms, each an
/// optional rational coefficient times coordinate factors
///   x<j>^<n>   log(x<j>)^<p>   H(x<j>)   H(-x<j>)   delta(x<j>,<k>)   mono(x<j>,<n>)
/// x, log and H factors of one coordinate combine into a single atom; without
/// H the factor lives on the whole line. A negative power is the finite part.
/// Coordinates that do not appear carry the constant 1 = H(x) + H(-x).
/// CoordinateConflict when one coordinate gets incompatible factors.
DistExpr parse_dist(std::string_view src, std::size_t dim);

/// Canonical text: every term names all coordinates, coefficient 1 is
/// omitted, "0" for the empty expression. parse_dist inverts it exactly.
std::string format_dist(const DistExpr& e);

/// Test function "gauss(<polynomial in x1..xd>; c=<r>,...,<r>; w=<r>)".
/// c defaults to the origin and w to 1.
GaussPoly parse_testfn(std::string_view src, std::size_t dim);

std::string format_testfn(const GaussPoly& phi);

}  // namespace eulerdist
