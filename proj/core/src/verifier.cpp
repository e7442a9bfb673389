#include "cnd/verifier.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "cnd/errors.hpp"
#include "cnd/exact_coeffs.hpp"

namespace cnd {

std::string VerificationReport::verdict() const {
  if (!fail_ns.empty()) return "violated";
  if (!indeterminate_ns.empty()) return "indeterminate";
  return "verified";
}

void VerificationReport::merge(const VerificationReport& other) {
  if (other.certificate_id != certificate_id)
    throw std::invalid_argument("merge: different certificates");
  if (other.n_from != n_to + 1)
    throw std::invalid_argument("merge: reports must be adjacent and ordered");
  n_to = other.n_to;
  pass_count += other.pass_count;
  fail_ns.insert(fail_ns.end(), other.fail_ns.begin(), other.fail_ns.end());
  indeterminate_ns.insert(indeterminate_ns.end(),
                          other.indeterminate_ns.begin(),
                          other.indeterminate_ns.end());
  out_of_domain_count += other.out_of_domain_count;
  if (other.min_margin_n != 0 &&
      (min_margin_n == 0 || other.min_margin < min_margin)) {
    min_margin = other.min_margin;
    min_margin_n = other.min_margin_n;
  }
  runtime_seconds += other.runtime_seconds;
}

std::string VerificationReport::to_json(bool include_timestamp) const {
  nlohmann::json j;
  j["version"] = 1;
  j["certificate"] = certificate_id;
  j["range"] = {{"from", n_from}, {"to", n_to}};
  j["passCount"] = pass_count;
  j["failures"] = fail_ns;
  j["indeterminate"] = indeterminate_ns;
  j["outOfDomainCount"] = out_of_domain_count;
  j["minMargin"] = {{"value", min_margin}, {"n", min_margin_n}};
  j["runtimeSeconds"] = runtime_seconds;
  j["verdict"] = verdict();
  if (include_timestamp) {
    std::time_t now = std::time(nullptr);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    j["generatedAt"] = buf;
  }
  return j.dump();
}

VerificationReport VerificationReport::from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  VerificationReport r;
  r.certificate_id = j.at("certificate").get<std::string>();
  r.n_from = j.at("range").at("from").get<uint64_t>();
  r.n_to = j.at("range").at("to").get<uint64_t>();
  r.pass_count = j.at("passCount").get<uint64_t>();
  r.fail_ns = j.at("failures").get<std::vector<uint64_t>>();
  r.indeterminate_ns = j.at("indeterminate").get<std::vector<uint64_t>>();
  r.out_of_domain_count = j.at("outOfDomainCount").get<uint64_t>();
  r.min_margin = j.at("minMargin").at("value").get<double>();
  r.min_margin_n = j.at("minMargin").at("n").get<uint64_t>();
  r.runtime_seconds = j.at("runtimeSeconds").get<double>();
  return r;
}

std::string VerificationReport::csv_header() {
  return "certificate,n_from,n_to,pass_count,fail_count,indeterminate_count,"
         "out_of_domain_count,min_margin,min_margin_n,verdict";
}

std::string VerificationReport::to_csv_row() const {
  std::ostringstream out;
  out.precision(17);
  out << '"' << certificate_id << '"' << ',' << n_from << ',' << n_to << ','
      << pass_count << ',' << fail_ns.size() << ',' << indeterminate_ns.size()
      << ',' << out_of_domain_count << ',' << min_margin << ',' << min_margin_n
      << ',' << verdict();
  return out.str();
}

namespace {

VerificationReport verify_shard(const BoundCertificate& cert,
                                const PrimeEngine& engine, uint64_t n_from,
                                uint64_t n_to,
                                const std::optional<Checkpoint>& resume) {
  VerificationReport r;
  r.certificate_id = cert.id;
  r.n_from = n_from;
  r.n_to = n_to;
  r.min_margin = std::numeric_limits<double>::infinity();
  auto start = std::chrono::steady_clock::now();
  auto inspect = [&](const PrimeRecord& rec) {
    if (rec.n < cert.n_min) {
      ++r.out_of_domain_count;
      return;
    }
    EvaluatedBound bound =
        evaluate_certificate(cert, static_cast<double>(rec.p));
    EvaluatedBound exact{to_double(rec.c), double_conversion_slack(rec.c)};
    Ternary ok = (cert.side == Side::Lower) ? interval_ge(exact, bound)
                                            : interval_le(exact, bound);
    double margin = (cert.side == Side::Lower) ? exact.value - bound.value
                                               : bound.value - exact.value;
    if (margin < r.min_margin) {
      r.min_margin = margin;
      r.min_margin_n = rec.n;
    }
    switch (ok) {
      case Ternary::Yes: ++r.pass_count; break;
      case Ternary::No: r.fail_ns.push_back(rec.n); break;
      case Ternary::Indeterminate: r.indeterminate_ns.push_back(rec.n); break;
    }
  };
  if (resume)
    engine.cn_stream(n_from, n_to, inspect, *resume);
  else
    engine.cn_stream(n_from, n_to, inspect);
  if (r.min_margin_n == 0) r.min_margin = 0.0;
  r.runtime_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return r;
}

}  // namespace

VerificationReport verify_range(const BoundCertificate& cert,
                                const PrimeEngine& engine, uint64_t n_from,
                                uint64_t n_to, int workers) {
  if (n_from < 1 || n_from > n_to)
    throw std::domain_error("verify_range: need 1 <= n_from <= n_to");
  if (workers < 1) throw std::domain_error("verify_range: workers >= 1");
  uint64_t size = n_to - n_from + 1;
  if (workers == 1 || size < 4 * static_cast<uint64_t>(workers))
    return verify_shard(cert, engine, n_from, n_to, std::nullopt);

  // One cheap sequential pass for shard-boundary checkpoints, then the
  // expensive per-n evaluation runs in parallel resumed from them.
  uint64_t shard = size / static_cast<uint64_t>(workers);
  std::vector<uint64_t> starts;
  for (int w = 0; w < workers; ++w) starts.push_back(n_from + shard * static_cast<uint64_t>(w));
  std::vector<Checkpoint> boundary(starts.size());
  {
    size_t next = 1;  // shard 0 starts cold or at n_from
    engine.cn_stream(1, starts.back(), [&](const PrimeRecord& rec) {
      while (next < starts.size() && rec.n + 1 == starts[next])
        boundary[next++] = Checkpoint::from_record(rec);
    });
  }
  std::vector<VerificationReport> parts(static_cast<size_t>(workers));
  std::vector<std::thread> threads;
  for (int w = 0; w < workers; ++w) {
    uint64_t lo = starts[static_cast<size_t>(w)];
    uint64_t hi = (w + 1 < workers) ? starts[static_cast<size_t>(w) + 1] - 1 : n_to;
    threads.emplace_back([&, w, lo, hi] {
      std::optional<Checkpoint> ck;
      if (w > 0) ck = boundary[static_cast<size_t>(w)];
      parts[static_cast<size_t>(w)] = verify_shard(cert, engine, lo, hi, ck);
    });
  }
  for (auto& t : threads) t.join();
  VerificationReport merged = parts[0];
  for (size_t w = 1; w < parts.size(); ++w) merged.merge(parts[w]);
  return merged;
}

std::vector<ErrorTableRow> asymptotic_error_table(
    const PrimeEngine& engine, int m, const std::vector<uint64_t>& n_points) {
  if (m < 2) throw std::domain_error("asymptotic_error_table: requires m >= 2");
  std::vector<uint64_t> points = n_points;
  std::sort(points.begin(), points.end());
  if (!points.empty() && points.front() < 2)
    throw std::domain_error("asymptotic_error_table: requires n >= 2");
  if (points.empty()) return {};
  AsymptoticExpansion trunc = thm29_truncation(m);
  std::vector<ErrorTableRow> rows;
  size_t next = 0;
  engine.cn_stream(points.front(), points.back(), [&](const PrimeRecord& rec) {
    while (next < points.size() && points[next] == rec.n) {
      ErrorTableRow row;
      row.n = rec.n;
      row.p = rec.p;
      row.c = rec.c;
      double p = static_cast<double>(rec.p);
      row.truncation = eval_expansion(trunc, p);
      row.normalized_error = (to_double(rec.c) - row.truncation) *
                             std::pow(std::log(p), m) / (p * p);
      rows.push_back(row);
      ++next;
    }
  });
  return rows;
}

std::vector<CorollaryRow> corollary_tables(const PrimeEngine& engine,
                                           const std::vector<uint64_t>& n_points,
                                           uint64_t pi_column_capacity) {
  std::vector<uint64_t> points = n_points;
  std::sort(points.begin(), points.end());
  if (points.empty()) return {};
  if (points.front() < 2)
    throw std::domain_error("corollary_tables: requires n >= 2");
  std::vector<CorollaryRow> rows;
  size_t next = 0;
  engine.cn_stream(points.front(), points.back(), [&](const PrimeRecord& rec) {
    while (next < points.size() && points[next] == rec.n) {
      CorollaryRow row;
      row.n = rec.n;
      row.p = rec.p;
      row.prime_sum = rec.sum;
      double p = static_cast<double>(rec.p);
      row.li_p2 = li(p * p);
      double norm = std::pow(std::log(p), 3) / (p * p);
      row.li_diff_normalized =
          std::fabs(to_double(rec.sum) - row.li_p2.value) * norm;
      rows.push_back(row);
      ++next;
    }
  });
  // pi(p_n^2) column via a secondary sieve, where feasible.
  uint64_t max_p2_needed = 0;
  for (const auto& row : rows) {
    uint64_t p2 = row.p * row.p;
    if (p2 <= pi_column_capacity) max_p2_needed = std::max(max_p2_needed, p2);
  }
  if (max_p2_needed > 0) {
    PrimeEngine::Config cfg = engine.config();
    cfg.capacity = max_p2_needed;
    PrimeEngine secondary(cfg);
    for (auto& row : rows) {
      uint64_t p2 = row.p * row.p;
      if (p2 > pi_column_capacity) continue;
      row.pi_p2 = secondary.prime_count(p2);
      double norm =
          std::pow(std::log(static_cast<double>(row.p)), 3) /
          (static_cast<double>(row.p) * static_cast<double>(row.p));
      row.pi_diff_normalized =
          std::fabs(to_double(row.prime_sum) -
                    static_cast<double>(*row.pi_p2)) *
          norm;
    }
  }
  return rows;
}

std::vector<SpotCheckRow> hypothesis_spot_check(
    const BoundHypothesis& h, const PrimeEngine& engine,
    const std::vector<uint64_t>& samples) {
  h.validate();
  std::vector<SpotCheckRow> rows;
  for (uint64_t x : samples) {
    SpotCheckRow row;
    row.x = static_cast<double>(x);
    row.below_cutoff = x < h.cutoff;
    double L = std::log(row.x);
    double rhs = row.x / L;
    for (int k = 2; k <= h.m; ++k)
      rhs += h.a[static_cast<size_t>(k - 2)].get_d() * row.x / std::pow(L, k);
    double pi_x = static_cast<double>(engine.prime_count(x));
    row.margin = (h.side == Side::Lower) ? pi_x - rhs : rhs - pi_x;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace cnd
