// Acceptance suite: one PASS/FAIL line per criterion, exit nonzero if any
// executed criterion fails. Criteria needing the full-capacity sieve only run
// with --heavy; otherwise they print SKIP.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <cnd/analytic_eval.hpp>
#include <cnd/bound_factory.hpp>
#include <cnd/exact_coeffs.hpp>
#include <cnd/prime_engine.hpp>
#include <cnd/verifier.hpp>

using namespace cnd;

namespace {

int failures = 0;

void report(int idx, const char* name, bool pass, const std::string& detail) {
  std::printf("[%2d] %s %s%s%s\n", idx, pass ? "PASS" : "FAIL", name,
              detail.empty() ? "" : " — ", detail.c_str());
  if (!pass) ++failures;
}

void skip(int idx, const char* name) {
  std::printf("[%2d] SKIP %s — heavy tier, rerun with --heavy\n", idx, name);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

Rational random_rational(std::mt19937_64& rng) {
  long num = static_cast<long>(rng() % 2001) - 1000;
  unsigned long den = 1 + rng() % 64;
  Rational r(num, den);
  r.canonicalize();
  return r;
}

// Exact rational ceiling of num/den.
Integer ceil_div(const Rational& q) {
  Integer c;
  mpz_cdiv_q(c.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
  return c;
}

void criterion1(const PrimeEngine& engine) {
  auto t0 = std::chrono::steady_clock::now();
  // Incremental step integral alongside the stream, plus direct API calls.
  bool ok = true;
  uint64_t bad_n = 0;
  Int128 integral = 0;
  uint64_t prev_p = 0;
  engine.cn_stream(1, 100000, [&](const PrimeRecord& rec) {
    if (rec.n > 1) integral += Int128(rec.n - 1) * (rec.p - prev_p);
    prev_p = rec.p;
    if (integral != rec.c && ok) {
      ok = false;
      bad_n = rec.n;
    }
  });
  for (uint64_t n : {1ULL, 2ULL, 5ULL, 100ULL, 4177ULL, 50000ULL, 100000ULL})
    if (engine.cn_exact(n) != engine.pi_step_integral(n)) {
      ok = false;
      bad_n = n;
    }
  double secs = seconds_since(t0);
  std::ostringstream d;
  if (!ok) d << "first mismatch at n=" << bad_n << "; ";
  d << "C_n = step integral for n <= 1e5 in " << secs << " s";
  report(1, "exactness identity C_n = int pi", ok && secs < 10.0, d.str());
}

void criterion2(const PrimeEngine& engine) {
  auto t0 = std::chrono::steady_clock::now();
  Int128 c = engine.cn_exact(66773604);
  bool ok = (c == parse_int128("45665745738169817"));
  std::ostringstream d;
  d << "C_66773604 = " << to_string(c) << " in " << seconds_since(t0) << " s";
  report(2, "published C_66773604 value", ok, d.str());
}

void criterion3() {
  const char* expect[] = {"1/2", "3/4", "7/4", "45/8", "93/4", "945/8",
                          "5715/8"};
  bool ok = true;
  for (int k = 1; k <= 7; ++k)
    ok = ok && (thm29_coeff(k) == parse_rational(expect[k - 1]));
  report(3, "thm29 coefficients k=1..7", ok,
         ok ? "all seven exact" : "mismatch");
}

void criterion4() {
  auto u1 = u_polynomial(1, AisTable::builtin_m2());
  auto u2 = u_polynomial(2, AisTable::builtin_m2());
  bool ok = u1.str() == "x - 3/2" && u2.str() == "x^2 - 5x + 15/2";
  report(4, "U_1 and U_2 polynomials", ok,
         "U_1 = " + u1.str() + ", U_2 = " + u2.str());
}

void criterion5(const PrimeEngine& engine, bool heavy) {
  std::ostringstream d;
  bool ok = true;

  // Reduced-x0 lower variant: same a-tuple, x0 = 1e6; the coefficient vector
  // is x0-independent and must already match the published tail exactly.
  BoundHypothesis lo = BoundHypothesis::prop53();
  lo.cutoff = 1'000'000;
  BoundCertificate lo_cert = make_certificate(lo, engine);
  const char* theta_expect[] = {"1/2",    "3/4",   "7/4",      "43.6/8",
                                "90.9/4", "927.5/8", "702.5625", "4942.21875"};
  bool lo_ok = lo_cert.coeffs.size() == 8;
  for (int k = 0; lo_ok && k < 8; ++k)
    lo_ok = lo_cert.coeffs[static_cast<size_t>(k)] ==
            parse_rational(theta_expect[k]);
  ok = ok && lo_ok;
  d << (lo_ok ? "lower coeffs match Theta; " : "lower coeffs WRONG; ");

  if (heavy) {
    BoundCertificate full = make_certificate(BoundHypothesis::prop53(), engine);
    bool d0_ok = full.constant.lo() >= 3.9e10;
    ok = ok && d0_ok;
    d << "d0 = " << full.constant.value << " +- " << full.constant.abs_err
      << (d0_ok ? " >= 3.9e10; " : " BELOW 3.9e10; ");
  } else {
    d << "d0 check skipped (heavy); ";
  }

  BoundHypothesis up = BoundHypothesis::prop56();
  BoundCertificate up_cert = make_certificate(up, engine);
  const char* omega_expect[] = {"1/2", "3/4", "7/4", "46.4/8", "95.1/4",
                                "962.5/8", "5809.5/8"};
  bool up_ok = up_cert.coeffs.size() == 8;
  for (int k = 0; up_ok && k < 7; ++k)
    up_ok = up_cert.coeffs[static_cast<size_t>(k)] ==
            parse_rational(omega_expect[k]);
  // Last coefficient carries the lambda sharpening: Omega_8 - 0.4375/8.
  if (up_ok)
    up_ok = up_cert.coeffs[7] ==
            parse_rational("59424/8") - parse_rational("0.4375/8");
  ok = ok && up_ok;
  d << (up_ok ? "upper coeffs Omega-consistent; " : "upper coeffs WRONG; ");

  bool d1_ok = up_cert.constant.hi() <= 450.0;
  ok = ok && d1_ok;
  d << "d1 = " << up_cert.constant.value << " +- " << up_cert.constant.abs_err
    << (d1_ok ? " <= 450" : " EXCEEDS the published 450 "
                            "(inequality as printed is unattainable; the exact "
                            "value from the published formula is ~639.1)");
  report(5, "certificate reproduction", ok, d.str());
}

void criterion6() {
  auto t0 = std::chrono::steady_clock::now();
  BoundHypothesis lo = BoundHypothesis::prop53();
  std::vector<Rational> li_up;
  for (const auto& c : li_bound_coefficients(LiBound::Lemma52))
    li_up.push_back(c);
  // log x0 = 21.010285..., so L = 21.01028 >= the stated 21.01027 and still a
  // valid lower bound; the printed mantissas are ceilings at their printed
  // decimal places, i.e. ceil(term / 1e8) with terms in units of 1e8.
  Rational L = parse_rational("21.01028");
  auto terms = lower_ledger_terms(lo, L, li_up);
  const long printed[] = {422512933, 30164729, 3349997, 496560,
                          98548,     23930,    10370};
  bool ok = terms.size() == 7;
  Integer total = 0;
  for (size_t j = 0; ok && j < 7; ++j) {
    Integer units = ceil_div(terms[j] / Rational(100000000));
    ok = (units == printed[j]);
    total += units;
  }
  ok = ok && (total == 456657067);  // 4.56657067e16 in units of 1e8
  std::ostringstream d;
  d << "sum = " << total.get_str() << "e8 vs printed 4.56657067e16, "
    << seconds_since(t0) << " s";
  report(6, "gl428 subtraction ledger", ok && seconds_since(t0) < 1.0,
         d.str());
}

void criterion7(const PrimeEngine& engine) {
  auto t0 = std::chrono::steady_clock::now();
  VerificationReport r = verify_range(prop56_upper(), engine, 1, 1'000'000, 4);
  double secs = seconds_since(t0);
  bool ok = r.verdict() == "verified" && secs < 60.0;
  std::ostringstream d;
  d << r.pass_count << " pass, " << r.fail_ns.size() << " fail, min margin "
    << r.min_margin << " at n=" << r.min_margin_n << ", " << secs << " s";
  report(7, "upper bound holds for n <= 1e6", ok, d.str());
}

void criterion8() {
  EvaluatedBound li121 = li(121.0, 1e-13);
  bool a = li121.lo() >= 34.59;
  EvaluatedBound margin = li_bound_check(LiBound::Lemma51, 4171.0, 1e-13);
  bool b = margin.value >= 0.00019 - margin.abs_err;
  std::ostringstream d;
  d << "li(121) = " << li121.value << ", lemma margin = " << margin.value;
  report(8, "li reference checks", a && b, d.str());
}

void criterion9() {
  std::mt19937_64 rng(20260826);
  std::uniform_real_distribution<double> lo(2.0, 20.0), span(1.0, 80.0);
  double worst = 0.0;
  bool ok = true;
  auto run = [&](IntegralIdentity which, auto setup) {
    for (int trial = 0; trial < 20; ++trial) {
      IdentityParams p;
      p.r = lo(rng);
      p.s = p.r + span(rng);
      setup(p);
      double res = quadrature_identity_residual(which, p, 1e-13);
      worst = std::max(worst, res);
      ok = ok && res <= 1e-9;
    }
  };
  run(IntegralIdentity::Lemma24, [&](IdentityParams&) {});
  run(IntegralIdentity::Lemma25, [&](IdentityParams&) {});
  run(IntegralIdentity::Lemma26,
      [&](IdentityParams& p) { p.n = 1 + static_cast<int>(rng() % 4); });
  run(IntegralIdentity::Lemma27,
      [&](IdentityParams& p) { p.n = 2 + static_cast<int>(rng() % 5); });
  run(IntegralIdentity::Prop28, [&](IdentityParams& p) {
    int m = 2 + static_cast<int>(rng() % 6);
    for (int k = 2; k <= m; ++k) p.a.push_back(random_rational(rng));
  });
  std::ostringstream d;
  d << "worst residual " << worst << " over 100 randomized identities";
  report(9, "quadrature identity suite", ok, d.str());
}

void criterion10(const PrimeEngine& engine) {
  auto rows =
      corollary_tables(engine, {1000, 10000, 100000, 1000000}, 0 /* no pi */);
  bool ok = rows.size() == 4;
  std::ostringstream d;
  d << "normalized |sum - li(p^2)| log^3 p / p^2:";
  for (const auto& row : rows) {
    ok = ok && std::isfinite(row.li_diff_normalized) &&
         row.li_diff_normalized < 10.0;
    d << ' ' << row.li_diff_normalized;
  }
  report(10, "corollary 2.11 trend", ok, d.str());
}

void criterion11() {
  std::mt19937_64 rng(424243);
  bool ok = true;
  for (int trial = 0; trial < 200 && ok; ++trial) {
    BoundHypothesis h;
    h.side = Side::Lower;
    h.m = 2 + static_cast<int>(rng() % 8);  // m <= 9
    for (int k = 2; k <= h.m; ++k) h.a.push_back(random_rational(rng));
    h.cutoff = 100;
    h.li_cutoff = 50.0;
    auto c = certificate_coefficients(h);
    for (int k = 1; k <= h.m - 1; ++k) {
      Rational fk(factorial(static_cast<unsigned long>(k - 1)),
                  pow2(static_cast<unsigned long>(k)));
      fk.canonicalize();
      Rational unsimplified = fk +
                              Rational(2) * fk * t_coeff(h.a, h.m - 1, 1) -
                              t_coeff(h.a, h.m - 1, k);
      if (c[static_cast<size_t>(k - 1)] != unsimplified) ok = false;
    }
  }
  report(11, "coefficient algebraic identity", ok,
         "200 random hypotheses, exact equality");
}

}  // namespace

int main(int argc, char** argv) {
  bool heavy = false;
  for (int i = 1; i < argc; ++i)
    if (std::strcmp(argv[i], "--heavy") == 0) heavy = true;

  // Standard tier: capacity covers p_1e6 and pi(sqrt(1e18)) = pi(1e9).
  PrimeEngine::Config cfg;
  cfg.capacity = heavy ? 1'400'000'000ULL : 1'000'000'007ULL;
  PrimeEngine engine(cfg);

  criterion1(engine);
  if (heavy)
    criterion2(engine);
  else
    skip(2, "published C_66773604 value");
  criterion3();
  criterion4();
  criterion5(engine, heavy);
  criterion6();
  criterion7(engine);
  criterion8();
  criterion9();
  criterion10(engine);
  criterion11();

  if (failures > 0) {
    std::printf("%d criterion(s) failed\n", failures);
    return 1;
  }
  std::printf("all executed criteria passed\n");
  return 0;
}
