#include "cnd/int128.hpp"

#include <cmath>
#include <stdexcept>

namespace cnd {

std::string to_string(Int128 v) {
  if (v == 0) return "0";
  bool neg = v < 0;
  unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : v;
  char buf[48];
  int pos = 48;
  while (u > 0) {
    buf[--pos] = static_cast<char>('0' + static_cast<int>(u % 10));
    u /= 10;
  }
  std::string s(buf + pos, 48 - pos);
  return neg ? "-" + s : s;
}

Int128 parse_int128(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("parse_int128: empty string");
  size_t i = 0;
  bool neg = false;
  if (s[0] == '-' || s[0] == '+') {
    neg = s[0] == '-';
    i = 1;
  }
  if (i == s.size()) throw std::invalid_argument("parse_int128: no digits");
  unsigned __int128 u = 0;
  for (; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9')
      throw std::invalid_argument("parse_int128: bad digit in '" + s + "'");
    unsigned __int128 next = u * 10 + static_cast<unsigned>(s[i] - '0');
    if (next < u) throw std::out_of_range("parse_int128: overflow");
    u = next;
  }
  return neg ? -static_cast<Int128>(u) : static_cast<Int128>(u);
}

double to_double(Int128 v) { return static_cast<double>(v); }

double double_conversion_slack(Int128 v) {
  double d = std::fabs(static_cast<double>(v));
  // One ulp of the converted magnitude; exact below 2^53.
  if (d < 9007199254740992.0) return 0.0;
  return std::ldexp(1.0, std::ilogb(d) - 52);
}

}  // namespace cnd
