#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace sgc {

using BigInt = boost::multiprecision::cpp_int;
// Always normalised: lowest terms, positive denominator.
using Rational = boost::multiprecision::cpp_rational;

inline Rational make_rational(const BigInt& num, const BigInt& den) { return Rational(num, den); }

/// "p/q", or "p" when the denominator is 1.
std::string to_fraction_string(const Rational& x);

/// Decimal rendering with `significant` significant digits.
std::string to_decimal_string(const Rational& x, int significant = 12);

/// C(n, k) with the zero convention for n < 0, k < 0, n < k.
BigInt binomial_big(long n, long k);

}  // namespace sgc
