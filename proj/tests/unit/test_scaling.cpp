#include <gtest/gtest.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <vector>

#include "loccmc/random.hpp"
#include "loccmc/sampling.hpp"

using namespace loccmc;

namespace {

// Median seconds per spectrum over a few repetitions.
double seconds_per_spectrum(int n, int m, int reps) {
    RandomStream rng(99, static_cast<std::uint64_t>(n) * 1000 + m);
    std::vector<double> times;
    for (int r = 0; r < 5; ++r) {
        const auto start = std::chrono::steady_clock::now();
        double sink = 0.0;
        for (int i = 0; i < reps; ++i) sink += sample_spectrum(n, m, rng)[0];
        const double t = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        EXPECT_GT(sink, 0.0);
        times.push_back(t / reps);
    }
    std::sort(times.begin(), times.end());
    return times[times.size() / 2];
}

}  // namespace

TEST(Scaling, TridiagonalSamplerIsNearQuadratic) {
    std::vector<double> logn, logt;
    for (int n : {64, 128, 256, 512, 1024}) {
        const int reps = std::max(2, 2000000 / (n * n));
        logn.push_back(std::log(n));
        logt.push_back(std::log(seconds_per_spectrum(n, n, reps)));
    }
    const double k = static_cast<double>(logn.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < logn.size(); ++i) {
        sx += logn[i];
        sy += logt[i];
        sxx += logn[i] * logn[i];
        sxy += logn[i] * logt[i];
    }
    const double slope = (k * sxy - sx * sy) / (k * sxx - sx * sx);
    EXPECT_LE(slope, 2.3);
}

TEST(Scaling, CostDoesNotGrowWithEnvironmentSize) {
    const double narrow = seconds_per_spectrum(128, 128, 40);
    const double wide = seconds_per_spectrum(128, 128 * 64, 40);
    EXPECT_LT(wide, 3.0 * narrow);
}
