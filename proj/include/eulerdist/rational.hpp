#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace eulerdist {

using Rational = mpq_class;

/// "a" for integers, "a/b" otherwise; always canonical (reduced, b > 0).
std::string to_string(const Rational& q);

double to_double(const Rational& q);

/// 1 / i!
Rational inverse_factorial(unsigned i);

Rational factorial(unsigned i);

Rational binomial(unsigned n, unsigned k);

Rational power(const Rational& base, unsigned exponent);

}  // namespace eulerdist
