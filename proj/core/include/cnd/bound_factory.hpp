#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cnd/analytic_eval.hpp"
#include "cnd/prime_engine.hpp"
#include "cnd/rational.hpp"

namespace cnd {

enum class Side { Lower, Upper };

// Hypothesis tuple: pi(x) >=/<= x/log x + sum a_k x/log^k x for x >= cutoff,
// plus an li bound valid from liCutoff (with slope lambda on the upper side).
// Certificates derived from it are conditional on these inequalities.
struct BoundHypothesis {
  Side side = Side::Lower;
  int m = 2;
  std::vector<Rational> a;  // a_2..a_m
  uint64_t cutoff = 2;      // x_0 (lower) or x_1 (upper)
  double li_cutoff = 2.0;   // y_0 or y_1
  std::optional<Rational> lambda;  // upper side only

  void validate() const;

  std::string to_json() const;
  static BoundHypothesis from_json(const std::string& text);

  // The paper-supplied tuples.
  static BoundHypothesis prop53();  // lower, m=9, x0 = 1332450001, y0 = 4171
  static BoundHypothesis prop56();  // upper, m=9, x1 = 11, y1 = 1e18
};

struct BoundCertificate {
  Side side = Side::Lower;
  EvaluatedBound constant;          // d_0 or d_1, with li error folded in
  std::vector<Rational> coeffs;     // c_1..c_{m-1} for c_k p^2 / log^k p
  uint64_t n_min = 1;
  std::string id;
  std::string provenance;           // hypothesis echo or "builtin:..."

  std::string to_json() const;
  static BoundCertificate from_json(const std::string& text);
};

// Exact coefficient vector c_1..c_{m-1}:
//   lower: c_k = ((k-1)!/2^k)(1 + 2 t_{k-1,1})
//   upper: same for k <= m-2; c_{m-1} = (1+2t_{m-1,1}) lambda / 2^{m-1} - a_m/(m-1)
std::vector<Rational> certificate_coefficients(const BoundHypothesis& h);

// Full certificate: exact coefficients, constant
//   d = int_2^cutoff pi - (1+2t_{m-1,1}) li(cutoff^2) + sum t_{m-1,k} cutoff^2/log^k cutoff
// (the pi integral is exact via the engine, never quadrature), and
// n_min = max(pi(cutoff)+1, pi(sqrt(liCutoff))+1) with exact pi.
BoundCertificate make_certificate(const BoundHypothesis& h,
                                  const PrimeEngine& engine,
                                  double li_rel_tol = 1e-13);

// constant + sum c_k p^2 / log^k p, error bound propagated.
EvaluatedBound evaluate_certificate(const BoundCertificate& c, double p);

// The paper's final stated bounds as closed-form certificates:
// lower = leading three terms + theta tail, valid n >= 52703656;
// upper = leading three terms + omega tail, valid n >= 1.
const BoundCertificate& prop53_lower();
const BoundCertificate& prop56_upper();

// Prior comparison baseline: -47.1 + p^2/(2 log p) + 3 p^2/(4 log^2 p).
double dusart_reference(double p);

// Net subtraction coefficients when an upper li bound with per-power
// coefficients u_1..u_J replaces li(cutoff^2) inside the lower-side constant:
//   c_k = (1+2 t_{m-1,1}) u_k / 2^k - t_{m-1,k},  k = 1..J.
std::vector<Rational> lower_ledger_coefficients(
    const BoundHypothesis& h, const std::vector<Rational>& li_upper_coeffs);

// The exact subtraction terms cutoff^2 * c_k / L^k for a rational lower bound
// L <= log(cutoff); rounding any of these up preserves the d_0 lower bound.
std::vector<Rational> lower_ledger_terms(
    const BoundHypothesis& h, const Rational& log_lower_bound,
    const std::vector<Rational>& li_upper_coeffs);

}  // namespace cnd
