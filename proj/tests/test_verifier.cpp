#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cnd/verifier.hpp>

#include <cmath>

#include "oracles.hpp"

using namespace cnd;

namespace {

const PrimeEngine& small_engine() {
  static PrimeEngine engine{PrimeEngine::Config{.capacity = 2'000'000}};
  return engine;
}

// A certificate that C_n must beat trivially: C_n >= 0 for all n.
BoundCertificate zero_lower(uint64_t n_min = 1) {
  BoundCertificate c;
  c.side = Side::Lower;
  c.constant = {0.0, 0.0};
  c.n_min = n_min;
  c.id = "test-zero-lower";
  c.provenance = "builtin:test";
  return c;
}

// An upper certificate every C_n violates from n = 2 on: C_n <= 1.
BoundCertificate one_upper() {
  BoundCertificate c;
  c.side = Side::Upper;
  c.constant = {1.0, 0.0};
  c.n_min = 1;
  c.id = "test-one-upper";
  c.provenance = "builtin:test";
  return c;
}

}  // namespace

TEST_CASE("verify_range on the built-in upper bound over a small range") {
  VerificationReport r =
      verify_range(prop56_upper(), small_engine(), 1, 2000);
  CHECK(r.verdict() == "verified");
  CHECK(r.pass_count == 2000);
  CHECK(r.fail_ns.empty());
  CHECK(r.indeterminate_ns.empty());
  CHECK(r.out_of_domain_count == 0);
  CHECK(r.min_margin > 0.0);
  CHECK(r.min_margin_n == 11);  // known tightest small-n point
  CHECK(r.range_size() == 2000);
}

TEST_CASE("verify_range flags violations with exact n lists") {
  VerificationReport r = verify_range(one_upper(), small_engine(), 1, 50);
  CHECK(r.verdict() == "violated");
  CHECK(!r.verified());
  // C_1 = 0 <= 1 passes; C_2 = 1 <= 1 passes; C_3 = 4 fails on.
  REQUIRE(r.fail_ns.size() == 48);
  CHECK(r.fail_ns.front() == 3);
  CHECK(r.fail_ns.back() == 50);
  CHECK(r.pass_count == 2);
  CHECK(r.min_margin < 0.0);
  CHECK(r.min_margin_n == 50);  // margin worsens monotonically here
}

TEST_CASE("out-of-domain n are counted, not judged") {
  VerificationReport r = verify_range(zero_lower(100), small_engine(), 1, 150);
  CHECK(r.out_of_domain_count == 99);
  CHECK(r.pass_count == 51);
  CHECK(r.verdict() == "verified");
  // min margin must come from in-domain n only.
  CHECK(r.min_margin_n >= 100);
}

TEST_CASE("verify_range is shard-invariant") {
  for (int workers : {2, 3, 4}) {
    VerificationReport seq =
        verify_range(prop56_upper(), small_engine(), 1, 3000, 1);
    VerificationReport par =
        verify_range(prop56_upper(), small_engine(), 1, 3000, workers);
    CHECK(par.pass_count == seq.pass_count);
    CHECK(par.fail_ns == seq.fail_ns);
    CHECK(par.indeterminate_ns == seq.indeterminate_ns);
    CHECK(par.out_of_domain_count == seq.out_of_domain_count);
    CHECK(par.min_margin == seq.min_margin);
    CHECK(par.min_margin_n == seq.min_margin_n);
    CHECK(par.n_from == seq.n_from);
    CHECK(par.n_to == seq.n_to);
  }
}

TEST_CASE("verify_range argument validation") {
  CHECK_THROWS_AS(verify_range(zero_lower(), small_engine(), 10, 5),
                  std::domain_error);
  CHECK_THROWS_AS(verify_range(zero_lower(), small_engine(), 0, 5),
                  std::domain_error);
  CHECK_THROWS_AS(verify_range(zero_lower(), small_engine(), 1, 10, 0),
                  std::domain_error);
}

TEST_CASE("report merge concatenates adjacent ranges") {
  VerificationReport a = verify_range(one_upper(), small_engine(), 1, 30);
  VerificationReport b = verify_range(one_upper(), small_engine(), 31, 60);
  VerificationReport whole = verify_range(one_upper(), small_engine(), 1, 60);
  a.merge(b);
  CHECK(a.n_from == whole.n_from);
  CHECK(a.n_to == whole.n_to);
  CHECK(a.pass_count == whole.pass_count);
  CHECK(a.fail_ns == whole.fail_ns);
  CHECK(a.min_margin == whole.min_margin);
  CHECK(a.min_margin_n == whole.min_margin_n);

  VerificationReport gap = verify_range(one_upper(), small_engine(), 70, 80);
  CHECK_THROWS_AS(a.merge(gap), std::invalid_argument);
  VerificationReport other = gap;
  other.certificate_id = "something-else";
  CHECK_THROWS_AS(a.merge(other), std::invalid_argument);
}

TEST_CASE("report JSON round trip and timestamp flag") {
  VerificationReport r = verify_range(one_upper(), small_engine(), 1, 40);
  std::string plain = r.to_json(false);
  CHECK(plain.find("generatedAt") == std::string::npos);
  CHECK(r.to_json(true).find("generatedAt") != std::string::npos);
  VerificationReport back = VerificationReport::from_json(plain);
  CHECK(back.certificate_id == r.certificate_id);
  CHECK(back.n_from == r.n_from);
  CHECK(back.n_to == r.n_to);
  CHECK(back.pass_count == r.pass_count);
  CHECK(back.fail_ns == r.fail_ns);
  CHECK(back.indeterminate_ns == r.indeterminate_ns);
  CHECK(back.out_of_domain_count == r.out_of_domain_count);
  CHECK(back.min_margin == r.min_margin);
  CHECK(back.min_margin_n == r.min_margin_n);
  CHECK(back.verdict() == r.verdict());
}

TEST_CASE("report CSV row matches the header shape") {
  VerificationReport r = verify_range(zero_lower(), small_engine(), 1, 10);
  std::string header = VerificationReport::csv_header();
  std::string row = r.to_csv_row();
  auto count = [](const std::string& s) {
    size_t commas = 0;
    for (char c : s)
      if (c == ',') ++commas;
    return commas;
  };
  CHECK(count(header) == count(row));
  CHECK(row.find("\"test-zero-lower\"") == 0);
  CHECK(row.find("verified") != std::string::npos);
}

TEST_CASE("asymptotic error table is normalized and bounded") {
  std::vector<uint64_t> points = {10, 100, 1000, 10000, 50000};
  auto rows = asymptotic_error_table(small_engine(), 3, points);
  REQUIRE(rows.size() == points.size());
  for (size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].n == points[i]);
    double p = static_cast<double>(rows[i].p);
    // Normalization is exactly (C - truncation) log^m p / p^2.
    double expect = (to_double(rows[i].c) - rows[i].truncation) *
                    std::pow(std::log(p), 3) / (p * p);
    CHECK(rows[i].normalized_error == doctest::Approx(expect).epsilon(1e-15));
  }
  // Normalized m=3 error should hover near the next coefficient 7/4 at the
  // larger points; allow a wide but meaningful band.
  CHECK(std::fabs(rows.back().normalized_error) < 10.0);
  CHECK(rows.back().normalized_error > 0.5);
  CHECK_THROWS_AS(asymptotic_error_table(small_engine(), 1, points),
                  std::domain_error);
  CHECK_THROWS_AS(asymptotic_error_table(small_engine(), 3, {1}),
                  std::domain_error);
}

TEST_CASE("error table truncation values are hand-checkable") {
  auto rows = asymptotic_error_table(small_engine(), 2, {5});
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].p == 11);
  // m = 2 truncation: p^2 * (1/2) / log p.
  CHECK(rows[0].truncation ==
        doctest::Approx(121.0 * 0.5 / std::log(11.0)).epsilon(1e-15));
  CHECK(rows[0].c == 27);
}

TEST_CASE("corollary table at n = 100") {
  auto rows = corollary_tables(small_engine(), {100}, 2'000'000ULL);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].n == 100);
  CHECK(rows[0].p == 541);
  CHECK(rows[0].prime_sum == 24133);  // sum of the first 100 primes
  REQUIRE(rows[0].pi_p2.has_value());
  // pi(541^2) = pi(292681) computed independently.
  PrimeEngine check{PrimeEngine::Config{.capacity = 300'000}};
  CHECK(*rows[0].pi_p2 == check.prime_count(292681));
  CHECK(rows[0].li_p2.value > 0.0);
  CHECK(rows[0].li_diff_normalized > 0.0);
  REQUIRE(rows[0].pi_diff_normalized.has_value());
}

TEST_CASE("corollary table pi column respects its capacity limit") {
  auto rows = corollary_tables(small_engine(), {10, 1000}, 1'000'000ULL);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].p == 29);
  CHECK(rows[0].pi_p2.has_value());   // 841 <= 1e6
  CHECK(!rows[1].pi_p2.has_value());  // 7919^2 > 1e6
  CHECK(rows[1].li_diff_normalized > 0.0);
  CHECK_THROWS_AS(corollary_tables(small_engine(), {1}), std::domain_error);
}

TEST_CASE("normalized corollary differences shrink (Cipolla-type collapse)") {
  auto rows = corollary_tables(small_engine(), {100, 1000, 10000, 100000},
                               2'000'000'000ULL);
  REQUIRE(rows.size() == 4);
  // |sum - li(p^2)| log^3 p / p^2 stays bounded by a small constant.
  for (const auto& row : rows) CHECK(row.li_diff_normalized < 5.0);
}

TEST_CASE("hypothesis spot check on the lower tuple") {
  BoundHypothesis h = BoundHypothesis::prop53();
  h.cutoff = 100000;  // shrink so some samples land above the cutoff
  auto rows =
      hypothesis_spot_check(h, small_engine(), {50000, 100000, 1000000});
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].below_cutoff);
  CHECK(!rows[1].below_cutoff);
  CHECK(!rows[2].below_cutoff);
  // The lower pi hypothesis only starts holding near its real cutoff
  // (1.3e9), so don't expect positive margins here; check the arithmetic.
  double x = 1e6;
  double L = std::log(x);
  double rhs = x / L;
  for (int k = 2; k <= h.m; ++k)
    rhs += h.a[static_cast<size_t>(k - 2)].get_d() * x / std::pow(L, k);
  double pi_x = static_cast<double>(small_engine().prime_count(1000000));
  CHECK(rows[2].margin == doctest::Approx(pi_x - rhs).epsilon(1e-12));
  CHECK(pi_x == 78498.0);
}

TEST_CASE("hypothesis spot check on the upper side") {
  BoundHypothesis h = BoundHypothesis::prop56();
  auto rows = hypothesis_spot_check(h, small_engine(), {100, 10000, 1000000});
  REQUIRE(rows.size() == 3);
  for (const auto& row : rows) {
    CHECK(!row.below_cutoff);  // cutoff is 11
    CHECK(row.margin > 0.0);
  }
}
