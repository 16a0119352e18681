#include <benchmark/benchmark.h>

#include "mono/sieve.hpp"

namespace {

const mono::Sieve& shared_sieve() {
    static mono::Sieve s;
    return s;
}

void BM_SpfSegment(benchmark::State& state) {
    const mono::Sieve& s = shared_sieve();
    uint64_t lo = uint64_t(state.range(0));
    uint64_t span = 1 << 20;
    for (auto _ : state) {
        benchmark::DoNotOptimize(s.spf_segment(lo, lo + span));
    }
    state.SetItemsProcessed(state.iterations() * span);
}
BENCHMARK(BM_SpfSegment)->Arg(2)->Arg(100'000'000);

void BM_PrimeCount(benchmark::State& state) {
    const mono::Sieve& s = shared_sieve();
    for (auto _ : state) {
        benchmark::DoNotOptimize(s.prime_count(uint64_t(state.range(0))));
    }
}
BENCHMARK(BM_PrimeCount)->Arg(1'000'000)->Arg(10'000'000);

void BM_ValueStreamPhi(benchmark::State& state) {
    const mono::Sieve& s = shared_sieve();
    uint64_t n = uint64_t(state.range(0));
    for (auto _ : state) {
        uint64_t acc = 0;
        s.for_each_value(mono::Fn::Phi, 1, n + 1,
                         [&](uint64_t, uint64_t v) { acc ^= v; });
        benchmark::DoNotOptimize(acc);
    }
    state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_ValueStreamPhi)->Arg(1'000'000);

}  // namespace
