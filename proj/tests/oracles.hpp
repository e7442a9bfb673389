#pragma once

// Independent test oracles. Nothing here may call into the implementation
// paths it is used to check.

#include <cnd/int128.hpp>
#include <cnd/rational.hpp>

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace oracle {

inline bool is_prime_trial(uint64_t v) {
  if (v < 2) return false;
  for (uint64_t d = 2; d * d <= v; ++d)
    if (v % d == 0) return false;
  return true;
}

inline std::vector<uint64_t> primes_up_to_trial(uint64_t limit) {
  std::vector<uint64_t> out;
  for (uint64_t v = 2; v <= limit; ++v)
    if (is_prime_trial(v)) out.push_back(v);
  return out;
}

inline uint64_t nth_prime_trial(uint64_t n) {
  uint64_t found = 0;
  for (uint64_t v = 2;; ++v)
    if (is_prime_trial(v) && ++found == n) return v;
}

inline cnd::Int128 cn_brute(uint64_t n) {
  cnd::Int128 sum = 0;
  uint64_t found = 0, p = 0;
  for (uint64_t v = 2; found < n; ++v)
    if (is_prime_trial(v)) {
      ++found;
      p = v;
      sum += v;
    }
  return static_cast<cnd::Int128>(n) * p - sum;
}

// Ei(z) = gamma + log z + sum_{k>=1} z^k / (k * k!), convergent for z > 0.
// li(x) = Ei(log x).
inline double li_series(double x) {
  const double gamma = 0.57721566490153286060651209008240243;
  double z = std::log(x);
  double sum = 0.0, term = 1.0;
  for (int k = 1; k < 200; ++k) {
    term *= z / k;
    double add = term / k;
    sum += add;
    if (std::fabs(add) < 1e-18 * std::fabs(sum)) break;
  }
  return gamma + std::log(z) + sum;
}

inline cnd::Rational random_rational(std::mt19937_64& rng, int num_range = 50,
                                     int den_range = 12) {
  std::uniform_int_distribution<int> num(-num_range, num_range);
  std::uniform_int_distribution<int> den(1, den_range);
  cnd::Rational q(num(rng), den(rng));
  q.canonicalize();
  return q;
}

}  // namespace oracle
