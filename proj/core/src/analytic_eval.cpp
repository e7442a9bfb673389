#include "cnd/analytic_eval.hpp"

#include <cmath>
#include <stdexcept>

#include "cnd/errors.hpp"
#include "cnd/exact_coeffs.hpp"

namespace cnd {

Ternary interval_ge(const EvaluatedBound& a, const EvaluatedBound& b) {
  if (a.lo() >= b.hi()) return Ternary::Yes;
  if (a.hi() < b.lo()) return Ternary::No;
  return Ternary::Indeterminate;
}

Ternary interval_le(const EvaluatedBound& a, const EvaluatedBound& b) {
  if (a.hi() <= b.lo()) return Ternary::Yes;
  if (a.lo() > b.hi()) return Ternary::No;
  return Ternary::Indeterminate;
}

EvaluatedBound li(double x, double rel_tol) {
  if (!(x > 1.0)) throw std::domain_error("li: requires x > 1");
  if (!(rel_tol > 0.0) || rel_tol > 1e-6)
    throw std::domain_error("li: requires 0 < rel_tol <= 1e-6");
  // t = e^u turns int_2^x dt/log t into int_{log 2}^{log x} e^u/u du,
  // which keeps interval lengths sane up to x ~ 1e19.
  double a = std::log(2.0), b = std::log(x);
  auto g = [](double u) { return std::exp(u) / u; };
  QuadResult q = (b >= a) ? integrate(g, a, b, rel_tol)
                          : integrate(g, b, a, rel_tol);
  double integral = (b >= a) ? q.value : -q.value;
  double value = kLi2 + integral;
  double err = q.abs_err + 4e-16 * std::fabs(value) + 1e-16;
  return {value, err};
}

double eval_expansion(const AsymptoticExpansion& e, double point) {
  double scale;
  switch (e.scale) {
    case Scale::N: scale = point; break;
    case Scale::HalfNSquared: scale = 0.5 * point * point; break;
    case Scale::PSquared: scale = point * point; break;
    default: throw std::logic_error("eval_expansion: bad scale");
  }
  double L = std::log(point);
  bool needs_loglog = false;
  for (const auto& t : e.terms)
    if (t.loglog_power != 0) needs_loglog = true;
  if (needs_loglog && !(point > std::exp(1.0)))
    throw std::domain_error("eval_expansion: loglog term needs point > e");
  for (const auto& t : e.terms)
    if (t.log_power != 0 && !(L > 0.0))
      throw std::domain_error("eval_expansion: log term needs point > 1");
  double LL = needs_loglog ? std::log(L) : 0.0;
  // Kahan summation over terms.
  double sum = 0.0, comp = 0.0;
  for (const auto& t : e.terms) {
    double v = t.coeff.get_d();
    if (t.log_power > 0)
      v /= std::pow(L, t.log_power);
    else if (t.log_power < 0)
      v *= std::pow(L, -t.log_power);
    if (t.loglog_power > 0) v *= std::pow(LL, t.loglog_power);
    double y = v - comp;
    double s = sum + y;
    comp = (s - sum) - y;
    sum = s;
  }
  return scale * sum;
}

namespace {

std::vector<std::pair<int, Rational>> tail_table(
    std::initializer_list<std::pair<int, const char*>> spec) {
  std::vector<std::pair<int, Rational>> out;
  for (const auto& [k, text] : spec) out.emplace_back(k, parse_rational(text));
  return out;
}

double eval_tail(const std::vector<std::pair<int, Rational>>& coeffs,
                 double p) {
  if (!(p > 1.0)) throw std::domain_error("closed-form tail: requires p > 1");
  double L = std::log(p);
  double sum = 0.0;
  for (const auto& [k, c] : coeffs) sum += c.get_d() / std::pow(L, k);
  return p * p * sum;
}

}  // namespace

std::vector<std::pair<int, Rational>> chi_coefficients() {
  return tail_table({{4, "45/8"}, {5, "93/4"}, {6, "945/8"}, {7, "5715/8"}});
}

std::vector<std::pair<int, Rational>> theta_coefficients() {
  return tail_table({{4, "43.6/8"}, {5, "90.9/4"}, {6, "927.5/8"},
                     {7, "702.5625"}, {8, "4942.21875"}});
}

std::vector<std::pair<int, Rational>> omega_coefficients() {
  return tail_table({{4, "46.4/8"}, {5, "95.1/4"}, {6, "962.5/8"},
                     {7, "5809.5/8"}, {8, "59424/8"}});
}

double chi(double p) { return eval_tail(chi_coefficients(), p); }
double theta(double p) { return eval_tail(theta_coefficients(), p); }
double omega(double p) { return eval_tail(omega_coefficients(), p); }

std::vector<Rational> li_bound_coefficients(LiBound which) {
  std::vector<Rational> c;
  switch (which) {
    case LiBound::Lemma51:
      for (int j = 1; j <= 8; ++j)
        c.emplace_back(factorial(static_cast<unsigned long>(j - 1)));
      break;
    case LiBound::Lemma52:
      for (int j = 1; j <= 6; ++j)
        c.emplace_back(factorial(static_cast<unsigned long>(j - 1)));
      c.emplace_back(900);
      break;
    case LiBound::Lemma54:
      for (int j = 1; j <= 7; ++j)
        c.emplace_back(factorial(static_cast<unsigned long>(j - 1)));
      c.emplace_back(6300);
      break;
  }
  return c;
}

EvaluatedBound li_bound_check(LiBound which, double x, double rel_tol) {
  double domain_min;
  switch (which) {
    case LiBound::Lemma51: domain_min = 4171.0; break;
    case LiBound::Lemma52: domain_min = 1e16; break;
    case LiBound::Lemma54: domain_min = 1e18; break;
    default: throw std::logic_error("li_bound_check");
  }
  if (!(x >= domain_min))
    throw std::domain_error("li_bound_check: x below the lemma's domain");
  auto coeffs = li_bound_coefficients(which);
  double L = std::log(x);
  double rhs = 0.0;
  for (size_t j = 0; j < coeffs.size(); ++j)
    rhs += coeffs[j].get_d() * x / std::pow(L, static_cast<int>(j) + 1);
  double rhs_err = 8e-16 * std::fabs(rhs);
  EvaluatedBound li_x = li(x, rel_tol);
  if (which == LiBound::Lemma51)
    return {li_x.value - rhs, li_x.abs_err + rhs_err};
  return {rhs - li_x.value, li_x.abs_err + rhs_err};
}

namespace {

// int_r^s x / log^k x dx by direct quadrature.
QuadResult power_log_integral(double r, double s, int k, double rel_tol) {
  return integrate(
      [k](double x) { return x / std::pow(std::log(x), k); }, r, s, rel_tol);
}

double li_diff_squares(double a, double x, double rel_tol, double& err) {
  EvaluatedBound lx = li(x * x, rel_tol);
  EvaluatedBound la = li(a * a, rel_tol);
  err = lx.abs_err + la.abs_err;
  return lx.value - la.value;
}

}  // namespace

double quadrature_identity_residual(IntegralIdentity which,
                                    const IdentityParams& params,
                                    double rel_tol) {
  double r = params.r, s = params.s;
  if (which == IntegralIdentity::Lemma24 || which == IntegralIdentity::Lemma25) {
    // (r, s) play the roles of (a, x).
    if (!(s >= r && r > 1.0))
      throw std::domain_error("identity: requires x >= a > 1");
  } else {
    if (!(s >= r && r > 1.0))
      throw std::domain_error("identity: requires s >= r > 1");
  }
  double li_err = 0.0;
  switch (which) {
    case IntegralIdentity::Lemma24: {
      QuadResult lhs = power_log_integral(r, s, 1, rel_tol);
      double rhs = li_diff_squares(r, s, rel_tol, li_err);
      return std::fabs(lhs.value - rhs);
    }
    case IntegralIdentity::Lemma25: {
      QuadResult lhs = power_log_integral(r, s, 2, rel_tol);
      double rhs = 2.0 * li_diff_squares(r, s, rel_tol, li_err) -
                   s * s / std::log(s) + r * r / std::log(r);
      return std::fabs(lhs.value - rhs);
    }
    case IntegralIdentity::Lemma26: {
      int n = params.n;
      if (n < 1) throw std::domain_error("Lemma26: requires n >= 1");
      if (r == s) return 0.0;
      QuadResult lhs = power_log_integral(r, s, n + 1, rel_tol);
      QuadResult inner = power_log_integral(r, s, n, rel_tol);
      double rhs = r * r / (n * std::pow(std::log(r), n)) -
                   s * s / (n * std::pow(std::log(s), n)) +
                   2.0 / n * inner.value;
      return std::fabs(lhs.value - rhs);
    }
    case IntegralIdentity::Lemma27: {
      int m = params.n;
      if (m < 2) throw std::domain_error("Lemma27: requires m >= 2");
      QuadResult lhs = power_log_integral(r, s, m, rel_tol);
      QuadResult base = power_log_integral(r, s, 2, rel_tol);
      double fm1 = factorial(static_cast<unsigned long>(m - 1)).get_d();
      double rhs = std::ldexp(1.0, m - 2) / fm1 * base.value;
      for (int k = 2; k <= m - 1; ++k) {
        double c = std::ldexp(1.0, m - 1 - k) *
                   factorial(static_cast<unsigned long>(k - 1)).get_d() / fm1;
        rhs -= c * (s * s / std::pow(std::log(s), k) -
                    r * r / std::pow(std::log(r), k));
      }
      return std::fabs(lhs.value - rhs);
    }
    case IntegralIdentity::Prop28: {
      int m = static_cast<int>(params.a.size()) + 1;
      if (m < 2) throw std::domain_error("Prop28: requires m >= 2");
      double lhs = 0.0;
      for (int k = 2; k <= m; ++k)
        lhs += params.a[static_cast<size_t>(k - 2)].get_d() *
               power_log_integral(r, s, k, rel_tol).value;
      QuadResult base = power_log_integral(r, s, 2, rel_tol);
      double rhs = t_coeff(params.a, m - 1, 1).get_d() * base.value;
      for (int k = 2; k <= m - 1; ++k)
        rhs -= t_coeff(params.a, m - 1, k).get_d() *
               (s * s / std::pow(std::log(s), k) -
                r * r / std::pow(std::log(r), k));
      return std::fabs(lhs - rhs);
    }
  }
  throw std::logic_error("quadrature_identity_residual: bad identity");
}

}  // namespace cnd
