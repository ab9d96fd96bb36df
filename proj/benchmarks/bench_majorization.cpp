#include <benchmark/benchmark.h>

#include "loccmc/majorization.hpp"
#include "loccmc/persistence.hpp"
#include "loccmc/random.hpp"
#include "loccmc/sampling.hpp"

namespace {

void BM_VidalPi(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    loccmc::RandomStream rng(4, 0);
    const auto x = loccmc::sample_spectrum(n, n, rng);
    const auto y = loccmc::sample_spectrum(n, n, rng);
    for (auto _ : state) {
        benchmark::DoNotOptimize(loccmc::vidal_pi(x, y));
    }
    state.SetComplexityN(n);
}
BENCHMARK(BM_VidalPi)->RangeMultiplier(4)->Range(16, 4096)->Complexity();

void BM_BuildBridge(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    loccmc::RandomStream rng(5, 0);
    const auto x = loccmc::sample_spectrum(n, n, rng);
    const auto y = loccmc::sample_spectrum(n, n, rng);
    for (auto _ : state) {
        const auto b = loccmc::build_bridge(x.values(), y.values(), true);
        benchmark::DoNotOptimize(loccmc::occupation_count(b));
    }
}
BENCHMARK(BM_BuildBridge)->RangeMultiplier(4)->Range(16, 4096);

}  // namespace
