#include <benchmark/benchmark.h>

#include <random>

#include "mono/monotone.hpp"

namespace {

const mono::Sieve& shared_sieve() {
    static mono::Sieve s;
    return s;
}

void BM_LndsRandom(benchmark::State& state) {
    std::mt19937_64 rng(7);
    std::vector<int64_t> values(size_t(state.range(0)));
    for (auto& v : values) v = int64_t(rng() % 1'000'000);
    for (auto _ : state) {
        benchmark::DoNotOptimize(mono::lnds_length(values));
    }
    state.SetItemsProcessed(state.iterations() * values.size());
}
BENCHMARK(BM_LndsRandom)->Arg(100'000)->Arg(1'000'000);

void BM_MLengthPhi(benchmark::State& state) {
    const mono::Sieve& s = shared_sieve();
    for (auto _ : state) {
        benchmark::DoNotOptimize(mono::m_length(uint64_t(state.range(0)), mono::Fn::Phi, s));
    }
}
BENCHMARK(BM_MLengthPhi)->Arg(100'000)->Arg(1'000'000);

}  // namespace
