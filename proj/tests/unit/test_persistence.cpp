#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <numeric>
#include <vector>

#include "loccmc/error.hpp"
#include "loccmc/majorization.hpp"
#include "loccmc/persistence.hpp"
#include "loccmc/sampling.hpp"

using namespace loccmc;

TEST(BuildBridge, EqualInputsGiveZeroPath) {
    const std::vector<double> x{0.5, 0.3, 0.2};
    const auto b = build_bridge(x, x, true);
    for (double s : b.partial_sums) EXPECT_EQ(s, 0.0);
    EXPECT_EQ(occupation_count(b), 3u);
}

TEST(BuildBridge, HandExample) {
    const std::vector<double> x{0.7, 0.3}, y{0.5, 0.5};
    const auto b = build_bridge(x, y, true);
    ASSERT_EQ(b.size(), 2u);
    EXPECT_NEAR(b.partial_sums[0], -0.2, 1e-15);
    EXPECT_EQ(b.partial_sums[1], 0.0);
    EXPECT_EQ(occupation_count(b), 1u);
    EXPECT_EQ(occupation_count(b, false), 0u);
}

TEST(BuildBridge, OrderedSortsAndUnorderedKeepsOrder) {
    const std::vector<double> x{0.2, 0.8}, y{0.6, 0.4};
    const auto ordered = build_bridge(x, y, true);
    EXPECT_NEAR(ordered.steps[0], 0.6 - 0.8, 1e-15);
    const auto raw = build_bridge(x, y, false);
    EXPECT_NEAR(raw.steps[0], 0.6 - 0.2, 1e-15);
    EXPECT_THROW(build_bridge(x, std::vector<double>{1.0}, true), InvalidArgument);
}

TEST(BuildBridge, PartialSumsAccumulateSteps) {
    RandomStream rng(3);
    const Spectrum x = sample_spectrum(20, 30, rng);
    const Spectrum y = sample_spectrum(20, 30, rng);
    const auto b = build_bridge(x.values(), y.values(), true);
    double s = 0.0;
    for (std::size_t k = 0; k + 1 < b.size(); ++k) {
        s += b.steps[k];
        EXPECT_EQ(b.partial_sums[k], s);
    }
    EXPECT_EQ(b.partial_sums.back(), 0.0);
}

TEST(BuildBridge, PositivityIsMajorization) {
    RandomStream rng(4);
    for (int i = 0; i < 10000; ++i) {
        const int n = 2 + static_cast<int>(rng.uniform_index(10));
        const Spectrum x = sample_spectrum(n, n + 2, rng);
        const Spectrum y = sample_spectrum(n, n + 2, rng);
        const auto b = build_bridge(x.values(), y.values(), true);
        const bool stays_nonnegative = occupation_count(b) == static_cast<std::size_t>(n);
        ASSERT_EQ(stays_nonnegative, majorizes(x, y).x_majorized_by_y);
    }
}

TEST(SparreAndersen, WalkSmallCases) {
    const auto p1 = sparre_andersen_pmf(1, ReferenceProcess::walk);
    ASSERT_EQ(p1.size(), 2u);
    EXPECT_NEAR(p1[0], 0.5, 1e-15);
    EXPECT_NEAR(p1[1], 0.5, 1e-15);
    const auto p2 = sparre_andersen_pmf(2, ReferenceProcess::walk);
    EXPECT_NEAR(p2[0], 3.0 / 8, 1e-15);
    EXPECT_NEAR(p2[1], 1.0 / 4, 1e-15);
    EXPECT_NEAR(p2[2], 3.0 / 8, 1e-15);
}

TEST(SparreAndersen, WalkPersistenceDecaysAsInverseSqrt) {
    const auto p = sparre_andersen_pmf(100, ReferenceProcess::walk);
    EXPECT_NEAR(p[100] * std::sqrt(std::numbers::pi * 100), 1.0, 0.005);
}

TEST(SparreAndersen, BridgeIsUniformOnOneToN) {
    for (int n : {1, 7, 64}) {
        const auto p = sparre_andersen_pmf(n, ReferenceProcess::bridge);
        EXPECT_EQ(p[0], 0.0);
        for (int k = 1; k <= n; ++k) EXPECT_DOUBLE_EQ(p[k], 1.0 / n);
    }
}

TEST(SparreAndersen, PmfsSumToOne) {
    for (int n : {1, 2, 3, 10, 100, 1000, 10000}) {
        for (auto kind : {ReferenceProcess::walk, ReferenceProcess::bridge}) {
            const auto p = sparre_andersen_pmf(n, kind);
            EXPECT_NEAR(std::accumulate(p.begin(), p.end(), 0.0), 1.0, 1e-12) << n;
        }
    }
    EXPECT_THROW(sparre_andersen_pmf(0, ReferenceProcess::walk), InvalidArgument);
}

TEST(ArcsineCdf, Values) {
    EXPECT_EQ(arcsine_cdf(0.0), 0.0);
    EXPECT_NEAR(arcsine_cdf(1.0), 1.0, 1e-15);
    EXPECT_NEAR(arcsine_cdf(0.5), 0.5, 1e-15);
    EXPECT_NEAR(arcsine_cdf(0.25), 1.0 / 3.0, 1e-15);
    EXPECT_THROW(arcsine_cdf(1.5), InvalidArgument);
    EXPECT_THROW(arcsine_cdf(-0.1), InvalidArgument);
}

TEST(SparreAndersen, WalkPmfApproachesArcsineLaw) {
    const int n = 2000;
    const auto p = sparre_andersen_pmf(n, ReferenceProcess::walk);
    double cdf = 0.0;
    for (int k = 0; k <= n; ++k) {
        cdf += p[k];
        if (k % 200 == 0 && k > 0 && k < n) EXPECT_NEAR(cdf, arcsine_cdf(static_cast<double>(k) / n), 0.01);
    }
}
