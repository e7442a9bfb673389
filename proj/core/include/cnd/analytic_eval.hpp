#pragma once

#include <span>
#include <vector>

#include "cnd/expansion.hpp"
#include "cnd/quadrature.hpp"
#include "cnd/rational.hpp"

namespace cnd {

// A real value with a finite absolute error bound; the true value lies in
// [value - abs_err, value + abs_err].
struct EvaluatedBound {
  double value = 0.0;
  double abs_err = 0.0;

  double lo() const { return value - abs_err; }
  double hi() const { return value + abs_err; }

  EvaluatedBound operator+(const EvaluatedBound& o) const {
    return {value + o.value, abs_err + o.abs_err};
  }
  EvaluatedBound operator-(const EvaluatedBound& o) const {
    return {value - o.value, abs_err + o.abs_err};
  }
  EvaluatedBound scaled(double k) const {
    return {value * k, abs_err * std::abs(k)};
  }
};

// Three-way interval comparison; Indeterminate when the intervals overlap.
enum class Ternary { Yes, No, Indeterminate };
Ternary interval_ge(const EvaluatedBound& a, const EvaluatedBound& b);
Ternary interval_le(const EvaluatedBound& a, const EvaluatedBound& b);

// Principal-value logarithmic integral li(x) = pv int_0^x dt/log t for x > 1,
// computed as li(2) + int_2^x dt/log t with the substitution t = e^u.
// Requires 0 < rel_tol <= 1e-6.
EvaluatedBound li(double x, double rel_tol = 1e-13);

// li(2) reference constant (validated against an Ei series oracle in tests).
inline constexpr double kLi2 = 1.04516378011749278;

// Sum of coeff * scale(point) * (loglog point)^a / (log point)^b with
// compensated summation. The remainder descriptor is ignored.
double eval_expansion(const AsymptoticExpansion& e, double point);

// Closed-form tails at p (playing the role of p_n):
// chi:   m=8 asymptotic tail, log powers 4..7.
// theta: explicit lower-bound tail, log powers 4..8.
// omega: explicit upper-bound tail, log powers 4..8.
double chi(double p);
double theta(double p);
double omega(double p);

// Exact rational coefficients of the closed forms, keyed by log power.
std::vector<std::pair<int, Rational>> chi_coefficients();
std::vector<std::pair<int, Rational>> theta_coefficients();
std::vector<std::pair<int, Rational>> omega_coefficients();

enum class LiBound {
  Lemma51,  // x >= 4171:  li(x) >= sum_{j=1}^{8} (j-1)! x / log^j x
  Lemma52,  // x >= 1e16:  li(x) <= series through 120/log^6 + 900/log^7
  Lemma54,  // x >= 1e18:  li(x) <= series through 720/log^7 + 6300/log^8
};

// Signed margin: li(x) - rhs(x) for Lemma51, rhs(x) - li(x) otherwise.
// Nonnegative (beyond abs_err) certifies the bound at x.
EvaluatedBound li_bound_check(LiBound which, double x, double rel_tol = 1e-13);

// Coefficients of the li bound polynomial sum c_j x / log^j x.
std::vector<Rational> li_bound_coefficients(LiBound which);

enum class IntegralIdentity { Lemma24, Lemma25, Lemma26, Lemma27, Prop28 };

struct IdentityParams {
  double r = 2.0;                // lower limit (a for Lemma24/25)
  double s = 10.0;               // upper limit (x for Lemma24/25)
  int n = 1;                     // Lemma26 exponent, Lemma27/Prop28 m
  std::vector<Rational> a;       // Prop28 a_2..a_m
};

// |quadrature(LHS) - closed form(RHS)|; these identities are exact, so any
// residual beyond combined quadrature error is a bug.
double quadrature_identity_residual(IntegralIdentity which,
                                    const IdentityParams& params,
                                    double rel_tol = 1e-12);

}  // namespace cnd
