#include "eulerdist/rational.hpp"

namespace eulerdist {

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

double to_double(const Rational& q) { return q.get_d(); }

Rational factorial(unsigned i) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), i);
  return Rational(f);
}

Rational inverse_factorial(unsigned i) { return Rational(1) / factorial(i); }

Rational binomial(unsigned n, unsigned k) {
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), n, k);
  return Rational(b);
}

Rational power(const Rational& base, unsigned exponent) {
  Rational result(1);
  for (unsigned i = 0; i < exponent; ++i) result *= base;
  return result;
}

}  // namespace eulerdist
