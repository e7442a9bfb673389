#pragma once

#include <cstdint>
#include <limits>
#include <string>

namespace cnd {

// Accumulator type for prime sums and C_n. Max value needed up to the
// documented capacity is ~9e16, so 64 bits would do; 128 bits makes the
// overflow guard trivially satisfied.
using Int128 = __int128;

inline constexpr Int128 kInt128Max =
    (static_cast<Int128>(INT64_MAX) << 64) | static_cast<Int128>(UINT64_MAX);

std::string to_string(Int128 v);
Int128 parse_int128(const std::string& s);

// Exact double conversion error bound: |x - double(x)| <= ulp-scale slack.
double to_double(Int128 v);
double double_conversion_slack(Int128 v);

}  // namespace cnd
