#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace tqft {

/// Arbitrary-precision rational, always kept canonical (gcd 1, positive denominator).
using Rational = mpq_class;
using Integer = mpz_class;

/// p/q in canonical form (the two-argument mpq_class constructor does not reduce).
inline Rational frac(const Integer& p, const Integer& q) {
  Rational r(p, q);
  r.canonicalize();
  return r;
}

/// Parses "p/q" or "p". Throws DivisionByZero for q = 0 and Error on malformed input.
Rational parse_rational(std::string_view text);

/// "p/q", with "/q" omitted when q = 1.
std::string to_string(const Rational& value);

Rational double_factorial(int n);  // (-1)!! = 1
Rational factorial(int n);
Rational binomial(int n, int k);

}  // namespace tqft
