#include "cnd/rational.hpp"

#include <stdexcept>

namespace cnd {

Rational parse_rational(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("parse_rational: empty string");
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    Rational num = parse_rational(s.substr(0, slash));
    Rational den = parse_rational(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("parse_rational: zero denominator");
    Rational q = num / den;
    q.canonicalize();
    return q;
  }
  auto dot = s.find('.');
  if (dot != std::string::npos) {
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    size_t frac_len = s.size() - dot - 1;
    if (digits.empty() || digits == "-" || digits == "+")
      throw std::invalid_argument("parse_rational: bad decimal '" + s + "'");
    Integer num(digits, 10);  // base fixed: "0.4375" concatenates to "04375",
                              // which base auto-detection would read as octal
    Integer den = 1;
    for (size_t i = 0; i < frac_len; ++i) den *= 10;
    Rational q(num, den);
    q.canonicalize();
    return q;
  }
  Rational q{Integer(s, 10)};
  q.canonicalize();
  return q;
}

std::string rational_str(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Integer factorial(unsigned long n) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

Integer pow2(unsigned long n) {
  Integer r = 1;
  r <<= n;
  return r;
}

Integer int128_to_mpz(Int128 v) {
  bool neg = v < 0;
  unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : v;
  Integer hi(static_cast<unsigned long>(u >> 64));
  Integer lo(static_cast<unsigned long>(u & UINT64_MAX));
  Integer r = (hi << 64) + lo;
  return neg ? -r : r;
}

double to_double(const Rational& q) { return q.get_d(); }

}  // namespace cnd
