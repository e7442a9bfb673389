#include <benchmark/benchmark.h>

#include <cnd/analytic_eval.hpp>
#include <cnd/bound_factory.hpp>
#include <cnd/exact_coeffs.hpp>
#include <cnd/prime_engine.hpp>

namespace {

const cnd::PrimeEngine& engine() {
  static cnd::PrimeEngine e{cnd::PrimeEngine::Config{.capacity = 100'000'000}};
  return e;
}

void BM_SieveSegment(benchmark::State& state) {
  uint64_t span = static_cast<uint64_t>(state.range(0));
  uint64_t lo = 50'000'000;
  for (auto _ : state) {
    auto seg = engine().sieve_segment(lo, lo + span);
    benchmark::DoNotOptimize(seg.primes.data());
  }
  state.SetItemsProcessed(static_cast<int64_t>(state.iterations()) *
                          static_cast<int64_t>(span));
}
BENCHMARK(BM_SieveSegment)->Arg(1 << 20)->Arg(1 << 22)->Arg(1 << 24);

void BM_CnStream(benchmark::State& state) {
  uint64_t n = static_cast<uint64_t>(state.range(0));
  for (auto _ : state) {
    cnd::Int128 last = 0;
    engine().cn_stream(1, n,
                       [&](const cnd::PrimeRecord& rec) { last = rec.c; });
    benchmark::DoNotOptimize(&last);
  }
  state.SetItemsProcessed(static_cast<int64_t>(state.iterations()) *
                          static_cast<int64_t>(n));
}
BENCHMARK(BM_CnStream)->Arg(100'000)->Arg(1'000'000);

void BM_PrimeCount(benchmark::State& state) {
  uint64_t x = static_cast<uint64_t>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(engine().prime_count(x));
}
BENCHMARK(BM_PrimeCount)->Arg(10'000'000)->Arg(100'000'000);

void BM_Li(benchmark::State& state) {
  double x = static_cast<double>(state.range(0));
  for (auto _ : state) {
    auto r = cnd::li(x);
    benchmark::DoNotOptimize(&r);
  }
}
BENCHMARK(BM_Li)->Arg(1'000'000)->Arg(1'000'000'000);

void BM_Thm21Assembly(benchmark::State& state) {
  for (auto _ : state) {
    auto e = cnd::thm21_expansion(2, cnd::AisTable::builtin_m2());
    benchmark::DoNotOptimize(&e);
  }
}
BENCHMARK(BM_Thm21Assembly);

void BM_CertificateCoeffs(benchmark::State& state) {
  for (auto _ : state) {
    auto c = cnd::certificate_coefficients(cnd::BoundHypothesis::prop53());
    benchmark::DoNotOptimize(&c);
  }
}
BENCHMARK(BM_CertificateCoeffs);

}  // namespace

BENCHMARK_MAIN();
