#include "cnd/prime_engine.hpp"

#include <nlohmann/json.hpp>

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "cnd/errors.hpp"

namespace cnd {

uint64_t isqrt_u64(uint64_t x) {
  uint64_t r = static_cast<uint64_t>(std::sqrt(static_cast<double>(x)));
  while (r > 0 && r * r > x) --r;
  while ((r + 1) * (r + 1) <= x) ++r;
  return r;
}

namespace {

std::vector<uint32_t> simple_sieve(uint32_t limit) {
  std::vector<uint8_t> composite(limit + 1, 0);
  std::vector<uint32_t> primes;
  for (uint32_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    primes.push_back(i);
    for (uint64_t j = static_cast<uint64_t>(i) * i; j <= limit; j += i)
      composite[j] = 1;
  }
  return primes;
}

// Odd-only bitmap for [seg_lo, seg_hi); bit k <-> seg_lo + 2k (seg_lo odd).
// Visits segments of at most `span` numbers covering [lo, hi].
template <class SegmentFn>
void for_each_odd_segment(const std::vector<uint32_t>& base_primes, uint64_t lo,
                          uint64_t hi, uint64_t span, SegmentFn&& fn) {
  if (hi < 3 || hi < lo) return;
  if (lo < 3) lo = 3;
  uint64_t seg_lo = lo | 1;  // first odd >= lo
  std::vector<uint64_t> words;
  while (seg_lo <= hi) {
    uint64_t seg_hi = seg_lo + span;
    if (seg_hi > hi + 1) seg_hi = hi + 1;
    uint64_t count = (seg_hi - seg_lo + 1) / 2;  // odds in [seg_lo, seg_hi)
    words.assign((count + 63) / 64, 0);
    for (uint32_t bp : base_primes) {
      if (bp == 2) continue;
      uint64_t p = bp;
      uint64_t start = p * p;
      if (start >= seg_hi) break;
      if (start < seg_lo) {
        uint64_t mult = (seg_lo + p - 1) / p;
        if ((mult & 1) == 0) ++mult;  // odd multiples only
        start = mult * p;
      }
      for (uint64_t v = start; v < seg_hi; v += 2 * p) {
        uint64_t bit = (v - seg_lo) / 2;
        words[bit / 64] |= 1ULL << (bit % 64);
      }
    }
    if (!fn(words, seg_lo, seg_hi, count)) return;
    seg_lo = seg_hi | 1;
    if (seg_hi % 2 == 1) seg_lo = seg_hi;  // seg_hi odd: it is the next start
  }
}

// Visits every prime in [lo, hi] ascending; fn returns false to stop.
template <class Fn>
void visit_primes(const std::vector<uint32_t>& base_primes, uint64_t lo,
                  uint64_t hi, uint64_t span, Fn&& fn) {
  if (lo <= 2 && hi >= 2) {
    if (!fn(uint64_t{2})) return;
  }
  bool stopped = false;
  for_each_odd_segment(
      base_primes, lo, hi, span,
      [&](const std::vector<uint64_t>& words, uint64_t seg_lo, uint64_t seg_hi,
          uint64_t count) {
        for (uint64_t w = 0; w < words.size(); ++w) {
          uint64_t word = ~words[w];
          while (word != 0) {
            unsigned b = std::countr_zero(word);
            word &= word - 1;
            uint64_t bit = w * 64 + b;
            if (bit >= count) break;
            uint64_t v = seg_lo + 2 * bit;
            if (v == 1) continue;
            if (!fn(v)) {
              stopped = true;
              return false;
            }
          }
        }
        (void)seg_hi;
        return true;
      });
  (void)stopped;
}

uint64_t fnv1a64(const std::string& s) {
  uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace

uint64_t Checkpoint::integrity_hash() const {
  std::ostringstream payload;
  payload << "cnd-ckpt-v" << kVersion << "|" << n << "|" << p << "|"
          << to_string(sum) << "|" << to_string(c);
  return fnv1a64(payload.str());
}

std::string Checkpoint::to_json() const {
  nlohmann::json j;
  j["format"] = "cnd-checkpoint";
  j["version"] = kVersion;
  j["n"] = n;
  j["p_n"] = p;
  j["sum"] = to_string(sum);
  j["c_n"] = to_string(c);
  char hex[17];
  std::snprintf(hex, sizeof(hex), "%016llx",
                static_cast<unsigned long long>(integrity_hash()));
  j["hash"] = hex;
  return j.dump();
}

Checkpoint Checkpoint::from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw CorruptionError(std::string("checkpoint: not valid JSON: ") + e.what());
  }
  try {
    if (j.at("format").get<std::string>() != "cnd-checkpoint")
      throw CorruptionError("checkpoint: wrong format tag");
    if (j.at("version").get<uint32_t>() != kVersion)
      throw CorruptionError("checkpoint: unsupported version");
    Checkpoint ck;
    ck.n = j.at("n").get<uint64_t>();
    ck.p = j.at("p_n").get<uint64_t>();
    ck.sum = parse_int128(j.at("sum").get<std::string>());
    ck.c = parse_int128(j.at("c_n").get<std::string>());
    char hex[17];
    std::snprintf(hex, sizeof(hex), "%016llx",
                  static_cast<unsigned long long>(ck.integrity_hash()));
    if (j.at("hash").get<std::string>() != hex)
      throw CorruptionError("checkpoint: integrity hash mismatch");
    if (ck.c != static_cast<Int128>(ck.n) * ck.p - ck.sum)
      throw CorruptionError("checkpoint: inconsistent c_n field");
    return ck;
  } catch (const nlohmann::json::exception& e) {
    throw CorruptionError(std::string("checkpoint: malformed field: ") + e.what());
  }
}

Checkpoint Checkpoint::from_record(const PrimeRecord& r) {
  return Checkpoint{r.n, r.p, r.sum, r.c};
}

void Checkpoint::save(const std::string& path) const {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("checkpoint: cannot open " + path);
  out << to_json() << "\n";
}

Checkpoint Checkpoint::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("checkpoint: cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return from_json(buf.str());
}

PrimeEngine::PrimeEngine(Config cfg) : cfg_(cfg) {
  if (cfg_.capacity < 2) throw std::domain_error("PrimeEngine: capacity < 2");
  if (cfg_.segment_span < 64)
    throw std::domain_error("PrimeEngine: segment span too small");
  base_primes_ =
      simple_sieve(static_cast<uint32_t>(isqrt_u64(cfg_.capacity)) + 1);
}

void PrimeEngine::scan_primes(uint64_t lo, uint64_t hi,
                              const std::function<bool(uint64_t)>& fn) const {
  if (hi > cfg_.capacity)
    throw ResourceError("scan_primes: range exceeds capacity");
  visit_primes(base_primes_, lo, hi, cfg_.segment_span, fn);
}

SieveSegment PrimeEngine::sieve_segment(uint64_t lo, uint64_t hi) const {
  if (hi > cfg_.capacity)
    throw ResourceError("sieve_segment: range exceeds capacity");
  SieveSegment seg;
  seg.lo = lo;
  seg.hi = hi;
  if (hi > lo)
    visit_primes(base_primes_, lo, hi - 1, cfg_.segment_span,
                 [&](uint64_t p) {
                   seg.primes.push_back(p);
                   return true;
                 });
  return seg;
}

uint64_t PrimeEngine::nth_prime(uint64_t n) const {
  if (n < 1) throw std::domain_error("nth_prime: n must be >= 1");
  uint64_t found = 0, result = 0;
  visit_primes(base_primes_, 2, cfg_.capacity, cfg_.segment_span,
               [&](uint64_t p) {
                 if (++found == n) {
                   result = p;
                   return false;
                 }
                 return true;
               });
  if (found < n)
    throw ResourceError("nth_prime: p_" + std::to_string(n) +
                        " exceeds capacity " + std::to_string(cfg_.capacity));
  return result;
}

uint64_t PrimeEngine::prime_count(uint64_t x) const {
  if (x > cfg_.capacity)
    throw ResourceError("prime_count: x exceeds capacity");
  if (x < 2) return 0;
  uint64_t count = (x >= 2) ? 1 : 0;  // the prime 2
  for_each_odd_segment(
      base_primes_, 3, x, cfg_.segment_span,
      [&](const std::vector<uint64_t>& words, uint64_t seg_lo, uint64_t seg_hi,
          uint64_t bits) {
        uint64_t full = bits / 64;
        for (uint64_t w = 0; w < full; ++w)
          count += std::popcount(~words[w]);
        if (bits % 64 != 0)
          count += std::popcount(~words[full] &
                                 ((1ULL << (bits % 64)) - 1));
        if (seg_lo == 1) --count;  // 1 is not prime (lo clamped to 3, unused)
        (void)seg_hi;
        return true;
      });
  return count;
}

uint64_t PrimeEngine::prime_count_real(double x) const {
  if (x < 0 || !std::isfinite(x))
    throw std::domain_error("prime_count_real: x must be finite and >= 0");
  if (x < 2.0) return 0;
  return prime_count(static_cast<uint64_t>(std::floor(x)));
}

Int128 PrimeEngine::cn_exact(uint64_t n) const {
  if (n < 1) throw std::domain_error("cn_exact: n must be >= 1");
  Int128 sum = 0;
  uint64_t count = 0, last = 0;
  visit_primes(base_primes_, 2, cfg_.capacity, cfg_.segment_span,
               [&](uint64_t p) {
                 if (sum > cfg_.accumulator_limit - static_cast<Int128>(p))
                   throw std::overflow_error("cn_exact: accumulator overflow");
                 sum += p;
                 last = p;
                 return ++count < n;
               });
  if (count < n) throw ResourceError("cn_exact: n exceeds capacity");
  return static_cast<Int128>(n) * last - sum;
}

Int128 PrimeEngine::pi_step_integral(uint64_t n) const {
  if (n < 1) throw std::domain_error("pi_step_integral: n must be >= 1");
  Int128 integral = 0;
  uint64_t count = 0, prev = 0;
  visit_primes(base_primes_, 2, cfg_.capacity, cfg_.segment_span,
               [&](uint64_t p) {
                 if (count >= 1) {
                   Int128 step =
                       static_cast<Int128>(count) * (p - prev);
                   if (integral > cfg_.accumulator_limit - step)
                     throw std::overflow_error(
                         "pi_step_integral: accumulator overflow");
                   integral += step;
                 }
                 prev = p;
                 return ++count < n;
               });
  if (count < n) throw ResourceError("pi_step_integral: n exceeds capacity");
  return integral;
}

Int128 PrimeEngine::pi_integral_to(uint64_t x) const {
  if (x > cfg_.capacity)
    throw ResourceError("pi_integral_to: x exceeds capacity");
  if (x <= 2) return 0;
  Int128 integral = 0;
  uint64_t count = 0, prev = 0;
  visit_primes(base_primes_, 2, x, cfg_.segment_span, [&](uint64_t p) {
    if (count >= 1) integral += static_cast<Int128>(count) * (p - prev);
    prev = p;
    ++count;
    return true;
  });
  integral += static_cast<Int128>(count) * (x - prev);
  return integral;
}

StreamSummary PrimeEngine::stream_records(StreamState st, uint64_t n_from,
                                          uint64_t n_to,
                                          const RecordFn& emit) const {
  StreamSummary summary;
  uint64_t scan_from = (st.n == 0) ? 2 : st.p + 1;
  visit_primes(base_primes_, scan_from, cfg_.capacity, cfg_.segment_span,
               [&](uint64_t p) {
                 if (st.sum > cfg_.accumulator_limit - static_cast<Int128>(p))
                   throw std::overflow_error("cn_stream: accumulator overflow");
                 ++st.n;
                 st.p = p;
                 st.sum += p;
                 if (st.n >= n_from) {
                   PrimeRecord rec{st.n, p, st.sum,
                                   static_cast<Int128>(st.n) * p - st.sum};
                   if (emit) emit(rec);
                   summary.last = rec;
                   ++summary.emitted;
                 }
                 return st.n < n_to;
               });
  if (st.n < n_to) throw ResourceError("cn_stream: range exceeds capacity");
  return summary;
}

StreamSummary PrimeEngine::cn_stream(uint64_t n_from, uint64_t n_to,
                                     const RecordFn& emit) const {
  if (n_from < 1 || n_from > n_to)
    throw std::domain_error("cn_stream: need 1 <= n_from <= n_to");
  return stream_records(StreamState{}, n_from, n_to, emit);
}

StreamSummary PrimeEngine::cn_stream(uint64_t n_from, uint64_t n_to,
                                     const RecordFn& emit,
                                     const Checkpoint& resume) const {
  if (n_from < 1 || n_from > n_to)
    throw std::domain_error("cn_stream: need 1 <= n_from <= n_to");
  if (resume.n > n_from)
    throw std::domain_error("cn_stream: checkpoint must be at or before n_from");
  if (resume.c != static_cast<Int128>(resume.n) * resume.p - resume.sum)
    throw CorruptionError("cn_stream: checkpoint fields inconsistent");
  if (resume.n == n_from) {
    // The first requested record is the checkpoint itself.
    PrimeRecord rec{resume.n, resume.p, resume.sum, resume.c};
    if (emit) emit(rec);
    StreamSummary summary{rec, 1};
    if (n_to > n_from) {
      StreamSummary rest =
          stream_records(StreamState{resume.n, resume.p, resume.sum},
                         n_from + 1, n_to, emit);
      summary.last = rest.last;
      summary.emitted += rest.emitted;
    }
    return summary;
  }
  return stream_records(StreamState{resume.n, resume.p, resume.sum}, n_from,
                        n_to, emit);
}

}  // namespace cnd
