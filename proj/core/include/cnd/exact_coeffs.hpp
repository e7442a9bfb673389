#pragma once

#include <span>
#include <vector>

#include "cnd/expansion.hpp"
#include "cnd/rational.hpp"

namespace cnd {

// b_{s,i,j,r}: base case b_{s,i,0,0} = 1, then
//   b_{s,i,j,j} = b_{s,i,j-1,j-1} * (-i+j-1)
//   b_{s,i,j,0} = b_{s,i,j-1,0} * (s+j-1)
//   b_{s,i,j,r} = b_{s,i,j-1,r} * (s+j-1) + b_{s,i,j-1,r-1} * (-i+r-1)
// Requires j >= r.
Integer b_coeff(int s, int i, int j, int r);

// t_{i,j} = (j-1)! * sum_{l=j}^{i} 2^{l-j} a_{l+1} / l!.
// `a` holds a_2..a_m (so a[0] = a_2). Empty sum (i < j) is 0.
// Requires j >= 1 and i <= m-1.
Rational t_coeff(std::span<const Rational> a, int i, int j);

// (k-1)! * (1 - 2^{-k}), k >= 1.
Rational thm29_coeff(int k);

// Terms (j-1)!/2^j / log^j for j = 1..m, scale n^2/2.
AsymptoticExpansion h_m_expansion(int m);

// Full expansion of C_n relative to n^2/2: log n + loglog n - 1/2 + h_m
// plus the exact double sum over the a_{is} and b coefficients. Terms with
// log power > m go into the remainder descriptor.
AsymptoticExpansion thm21_expansion(int m, const AisTable& a);

// The monic degree-s polynomial U_s in loglog n that collapses the double
// sum: the 1/log^s group of thm21_expansion equals
// (-1)^{s+1} U_s(loglog n) / s. Requires 1 <= s <= a.m().
Polynomial u_polynomial(int s, const AisTable& a);

// Truncation of the p_n^2 expansion: thm29_coeff(k)/log^k for k = 1..m-1.
AsymptoticExpansion thm29_truncation(int m);

}  // namespace cnd
