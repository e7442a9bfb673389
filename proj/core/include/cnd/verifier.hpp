#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cnd/bound_factory.hpp"
#include "cnd/prime_engine.hpp"

namespace cnd {

// Aggregated per-n verdicts over an n-range. Exact C_n is always on one side
// of every comparison; the only approximate quantities are certificate
// constants and li values, whose error intervals are honored. Overlapping
// intervals yield Indeterminate, never a silent pass or fail.
struct VerificationReport {
  std::string certificate_id;
  uint64_t n_from = 0;
  uint64_t n_to = 0;
  uint64_t pass_count = 0;
  std::vector<uint64_t> fail_ns;           // sorted ascending
  std::vector<uint64_t> indeterminate_ns;  // sorted ascending
  uint64_t out_of_domain_count = 0;        // n < nMin: the theorem claims nothing
  double min_margin = 0.0;                 // over in-domain n; ties -> smaller n
  uint64_t min_margin_n = 0;
  double runtime_seconds = 0.0;

  uint64_t range_size() const { return n_to - n_from + 1; }
  bool verified() const { return fail_ns.empty(); }
  std::string verdict() const;

  // Concatenates an adjacent report (other.n_from == n_to + 1).
  void merge(const VerificationReport& other);

  std::string to_json(bool include_timestamp = false) const;
  static VerificationReport from_json(const std::string& text);
  static std::string csv_header();
  std::string to_csv_row() const;
};

// Compares exact C_n against the certificate at p_n for every n in range.
// Deterministic and shard-invariant: workers > 1 splits the range, resumes
// each shard from a computed checkpoint, and merges in order.
VerificationReport verify_range(const BoundCertificate& cert,
                                const PrimeEngine& engine, uint64_t n_from,
                                uint64_t n_to, int workers = 1);

struct ErrorTableRow {
  uint64_t n = 0;
  uint64_t p = 0;
  Int128 c = 0;
  double truncation = 0.0;
  double normalized_error = 0.0;  // (C_n - truncation) * log^m p / p^2
};

// Empirical error table for the p_n^2 truncation at depth m (terms 1..m-1).
// Requires m >= 2 and every point n >= 2 (so p_n >= 3).
std::vector<ErrorTableRow> asymptotic_error_table(
    const PrimeEngine& engine, int m, const std::vector<uint64_t>& n_points);

struct CorollaryRow {
  uint64_t n = 0;
  uint64_t p = 0;
  Int128 prime_sum = 0;                 // exact sum_{k<=n} p_k
  EvaluatedBound li_p2;                 // li(p_n^2)
  std::optional<uint64_t> pi_p2;        // pi(p_n^2) when within capacity
  double li_diff_normalized = 0.0;      // |sum - li| * log^3 p / p^2
  std::optional<double> pi_diff_normalized;
};

// Both comparisons of the prime sum: against pi(p_n^2) where the secondary
// sieve reaches, and against li(p_n^2) always.
std::vector<CorollaryRow> corollary_tables(
    const PrimeEngine& engine, const std::vector<uint64_t>& n_points,
    uint64_t pi_column_capacity = 20'000'000'000ULL);

struct SpotCheckRow {
  double x = 0.0;
  bool below_cutoff = false;  // flagged, not an error
  double margin = 0.0;        // >= 0 is consistency evidence, not proof
};

// Samples the hypothesis pi(x) inequality at the given x values using
// exact pi from the engine.
std::vector<SpotCheckRow> hypothesis_spot_check(
    const BoundHypothesis& h, const PrimeEngine& engine,
    const std::vector<uint64_t>& samples);

}  // namespace cnd
