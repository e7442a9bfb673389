#include "cnd/exact_coeffs.hpp"

#include <map>
#include <stdexcept>
#include <tuple>

namespace cnd {

namespace {

Integer b_coeff_impl(int s, int i, int j, int r,
                     std::map<std::tuple<int, int, int, int>, Integer>& memo) {
  if (j == 0 && r == 0) return 1;
  auto key = std::make_tuple(s, i, j, r);
  auto it = memo.find(key);
  if (it != memo.end()) return it->second;
  Integer value;
  if (r == j) {
    value = b_coeff_impl(s, i, j - 1, j - 1, memo) * (-i + j - 1);
  } else if (r == 0) {
    value = b_coeff_impl(s, i, j - 1, 0, memo) * (s + j - 1);
  } else {
    value = b_coeff_impl(s, i, j - 1, r, memo) * (s + j - 1) +
            b_coeff_impl(s, i, j - 1, r - 1, memo) * (-i + r - 1);
  }
  memo.emplace(key, value);
  return value;
}

}  // namespace

Integer b_coeff(int s, int i, int j, int r) {
  if (s < 0 || i < 0 || j < 0 || r < 0)
    throw std::domain_error("b_coeff: indices must be nonnegative");
  if (j < r) throw std::domain_error("b_coeff: requires j >= r");
  // Memo confined per thread; queries during expansion assembly repeat heavily.
  thread_local std::map<std::tuple<int, int, int, int>, Integer> memo;
  return b_coeff_impl(s, i, j, r, memo);
}

Rational t_coeff(std::span<const Rational> a, int i, int j) {
  if (j < 1) throw std::domain_error("t_coeff: requires j >= 1");
  if (i > static_cast<int>(a.size()))
    throw std::domain_error("t_coeff: a-list too short for i");
  if (i < j) return Rational(0);
  Rational sum(0);
  for (int l = j; l <= i; ++l) {
    // a[l-1] is a_{l+1}
    Rational term(pow2(static_cast<unsigned long>(l - j)),
                  factorial(static_cast<unsigned long>(l)));
    term.canonicalize();
    sum += term * a[static_cast<size_t>(l - 1)];
  }
  Rational result = Rational(factorial(static_cast<unsigned long>(j - 1))) * sum;
  result.canonicalize();
  return result;
}

Rational thm29_coeff(int k) {
  if (k < 1) throw std::domain_error("thm29_coeff: requires k >= 1");
  Rational r(factorial(static_cast<unsigned long>(k - 1)) *
                 (pow2(static_cast<unsigned long>(k)) - 1),
             pow2(static_cast<unsigned long>(k)));
  r.canonicalize();
  return r;
}

AsymptoticExpansion h_m_expansion(int m) {
  if (m < 1) throw std::domain_error("h_m_expansion: requires m >= 1");
  AsymptoticExpansion e;
  e.scale = Scale::HalfNSquared;
  for (int j = 1; j <= m; ++j) {
    Rational c(factorial(static_cast<unsigned long>(j - 1)),
               pow2(static_cast<unsigned long>(j)));
    c.canonicalize();
    e.add(c, j, 0);
  }
  e.normalize();
  return e;
}

AsymptoticExpansion thm21_expansion(int m, const AisTable& a) {
  if (m < 1) throw std::domain_error("thm21_expansion: requires m >= 1");
  if (a.m() < m)
    throw std::domain_error("thm21_expansion: AisTable incomplete for m");
  AsymptoticExpansion e;
  e.scale = Scale::HalfNSquared;
  e.add(Rational(1), -1, 0);            // log n
  e.add(Rational(1), 0, 1);             // loglog n
  e.add(Rational(-1, 2), 0, 0);
  for (int j = 1; j <= m; ++j) {
    Rational c(factorial(static_cast<unsigned long>(j - 1)),
               pow2(static_cast<unsigned long>(j)));
    c.canonicalize();
    e.add(c, j, 0);
  }
  for (int s = 1; s <= m; ++s) {
    int sign = (s % 2 == 1) ? 1 : -1;
    for (int i = 0; i <= s; ++i) {
      Rational ais = a.at(i, s);
      if (ais == 0) continue;
      Rational lead = Rational(2 * sign, s) * ais;
      lead.canonicalize();
      e.add(lead, s, i);
      for (int j = 0; j <= m - s; ++j) {
        for (int r = 0; r <= std::min(i, j); ++r) {
          Rational inner(b_coeff(s, i, j, r),
                         Integer(s) * pow2(static_cast<unsigned long>(j)));
          inner.canonicalize();
          Rational c = Rational(-sign) * ais * inner;
          c.canonicalize();
          e.add(c, s + j, i - r);
        }
      }
    }
  }
  // Truncate everything past 1/log^m into the remainder.
  std::vector<ExpansionTerm> kept;
  for (auto& t : e.terms)
    if (t.log_power <= m) kept.push_back(t);
  e.terms = std::move(kept);
  e.remainder = "O(n^2 (loglog n)^" + std::to_string(m + 1) + " / log^" +
                std::to_string(m + 1) + " n)";
  e.normalize();
  return e;
}

Polynomial u_polynomial(int s, const AisTable& a) {
  if (s < 1 || s > a.m())
    throw std::domain_error("u_polynomial: requires 1 <= s <= m");
  AsymptoticExpansion e = thm21_expansion(a.m(), a);
  int sign = (s % 2 == 1) ? 1 : -1;
  Polynomial u;
  u.coeffs.assign(static_cast<size_t>(s) + 1, Rational(0));
  for (int d = 0; d <= s; ++d) {
    Rational c = e.coeff_at(s, d) * Rational(sign * s);
    c.canonicalize();
    u.coeffs[static_cast<size_t>(d)] = c;
  }
  return u;
}

AsymptoticExpansion thm29_truncation(int m) {
  if (m < 1) throw std::domain_error("thm29_truncation: requires m >= 1");
  AsymptoticExpansion e;
  e.scale = Scale::PSquared;
  for (int k = 1; k <= m - 1; ++k) e.add(thm29_coeff(k), k, 0);
  e.remainder = "O(p_n^2 / log^" + std::to_string(m) + " p_n)";
  e.normalize();
  return e;
}

}  // namespace cnd
