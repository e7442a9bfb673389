#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "cnd/int128.hpp"

namespace cnd {

// Streaming unit of exact computation. No floating point anywhere near this.
struct PrimeRecord {
  uint64_t n = 0;    // prime index, 1-based
  uint64_t p = 0;    // p_n
  Int128 sum = 0;    // sum_{k<=n} p_k
  Int128 c = 0;      // C_n = n*p_n - sum
};

// Primes in [lo, hi), strictly ascending.
struct SieveSegment {
  uint64_t lo = 0;
  uint64_t hi = 0;
  std::vector<uint64_t> primes;
};

// Versioned, self-describing resume point. Resuming from a checkpoint and
// running to index N yields bit-identical records as an uninterrupted run.
struct Checkpoint {
  static constexpr uint32_t kVersion = 1;
  uint64_t n = 0;
  uint64_t p = 0;
  Int128 sum = 0;
  Int128 c = 0;

  uint64_t integrity_hash() const;
  std::string to_json() const;
  // Throws CorruptionError on hash mismatch or inconsistent fields.
  static Checkpoint from_json(const std::string& text);
  static Checkpoint from_record(const PrimeRecord& r);

  void save(const std::string& path) const;
  static Checkpoint load(const std::string& path);
};

struct StreamSummary {
  PrimeRecord last;
  uint64_t emitted = 0;
};

// Segmented sieve with exact streaming accumulation. Query methods are const
// and safe for concurrent use after construction.
class PrimeEngine {
 public:
  struct Config {
    // Largest prime value reachable; must cover x0 = 1332450001 for the
    // heavy-tier runs, hence the 1.4e9 default.
    uint64_t capacity = 1'400'000'000ULL;
    // Numbers per sieve segment; 1<<22 keeps the odd bitmap in L2.
    uint64_t segment_span = 1ULL << 22;
    // Accumulator guard; narrowed only by tests.
    Int128 accumulator_limit = kInt128Max;
  };

  PrimeEngine() : PrimeEngine(Config{}) {}
  explicit PrimeEngine(Config cfg);

  const Config& config() const { return cfg_; }

  // p_n. Throws ResourceError if p_n would exceed capacity.
  uint64_t nth_prime(uint64_t n) const;

  // pi(x). Throws ResourceError if x exceeds capacity.
  uint64_t prime_count(uint64_t x) const;
  // pi(floor(x)) for real x >= 0.
  uint64_t prime_count_real(double x) const;

  // Exact C_n = n*p_n - sum_{k<=n} p_k.
  Int128 cn_exact(uint64_t n) const;

  // sum_{k=1}^{n-1} k*(p_{k+1}-p_k): the step integral of pi from 2 to p_n.
  Int128 pi_step_integral(uint64_t n) const;

  // Integral of pi over [2, x] for integer x (exact; pi is a step function).
  Int128 pi_integral_to(uint64_t x) const;

  using RecordFn = std::function<void(const PrimeRecord&)>;

  // Emits records for every n in [n_from, n_to], ascending, exactly once.
  StreamSummary cn_stream(uint64_t n_from, uint64_t n_to,
                          const RecordFn& emit) const;
  // Same, resuming from a checkpoint with ckpt.n <= n_from.
  StreamSummary cn_stream(uint64_t n_from, uint64_t n_to, const RecordFn& emit,
                          const Checkpoint& resume) const;

  // Calls fn(p) for each prime in [lo, hi] ascending; fn returns false to stop.
  void scan_primes(uint64_t lo, uint64_t hi,
                   const std::function<bool(uint64_t)>& fn) const;

  SieveSegment sieve_segment(uint64_t lo, uint64_t hi) const;

 private:
  struct StreamState {
    uint64_t n = 0;
    uint64_t p = 0;
    Int128 sum = 0;
  };

  StreamSummary stream_records(StreamState start, uint64_t n_from,
                               uint64_t n_to, const RecordFn& emit) const;

  Config cfg_;
  std::vector<uint32_t> base_primes_;  // primes <= sqrt(capacity)
};

uint64_t isqrt_u64(uint64_t x);

}  // namespace cnd
