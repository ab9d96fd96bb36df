#include <benchmark/benchmark.h>

#include "loccmc/random.hpp"
#include "loccmc/sampling.hpp"

namespace {

void BM_TridiagonalSpectrum(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    loccmc::RandomStream rng(1, 0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(loccmc::sample_spectrum(n, 2 * n, rng));
    }
    state.SetComplexityN(n);
}
BENCHMARK(BM_TridiagonalSpectrum)->RangeMultiplier(2)->Range(8, 1024)->Complexity();

void BM_DenseSpectrum(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    loccmc::RandomStream rng(1, 0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(loccmc::sample_spectrum_dense(n, 2 * n, rng));
    }
    state.SetComplexityN(n);
}
BENCHMARK(BM_DenseSpectrum)->RangeMultiplier(2)->Range(8, 64)->Complexity();

void BM_TridiagonalEigenvalues(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    loccmc::RandomStream rng(2, 0);
    const auto t = loccmc::sample_tridiagonal(loccmc::BidiagonalModel{n, n}, rng);
    for (auto _ : state) {
        benchmark::DoNotOptimize(loccmc::eigvals_symtrid(t));
    }
}
BENCHMARK(BM_TridiagonalEigenvalues)->RangeMultiplier(4)->Range(16, 1024);

void BM_Chi(benchmark::State& state) {
    loccmc::RandomStream rng(3, 0);
    const double dof = static_cast<double>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(loccmc::sample_chi(dof, rng));
    }
}
BENCHMARK(BM_Chi)->Arg(1)->Arg(64);

}  // namespace
