#include <benchmark/benchmark.h>

#include "mono/sigma_ratio.hpp"

namespace {

const mono::Sieve& shared_sieve() {
    static mono::Sieve s;
    return s;
}

void BM_PowerfulSum(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(mono::powerful_sum(uint64_t(state.range(0))));
    }
}
BENCHMARK(BM_PowerfulSum)->Arg(1'000'000)->Arg(100'000'000);

void BM_SigmaClassSum(benchmark::State& state) {
    const mono::Sieve& s = shared_sieve();
    mono::Rational two(2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(mono::sigma_class_partial_sum(two, uint64_t(state.range(0)), s));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SigmaClassSum)->Arg(100'000);

}  // namespace
