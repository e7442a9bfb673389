#pragma once

#include <gmpxx.h>

#include <string>

#include "cnd/int128.hpp"

namespace cnd {

// Exact arithmetic carriers. mpq_class keeps denominator > 0 and
// gcd(num, den) = 1 after canonicalize(); every helper below returns
// canonical values.
using Integer = mpz_class;
using Rational = mpq_class;

// Accepts "p/q", plain integers, and decimal strings ("5.65" -> 113/20).
// Decimals are parsed exactly, never through a float.
Rational parse_rational(const std::string& s);

// "p/q", or just "p" when q = 1.
std::string rational_str(const Rational& q);

Integer factorial(unsigned long n);
Integer pow2(unsigned long n);

Integer int128_to_mpz(Int128 v);

double to_double(const Rational& q);

}  // namespace cnd
