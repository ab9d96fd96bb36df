#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "loccmc/error.hpp"
#include "loccmc/majorization.hpp"
#include "loccmc/random.hpp"
#include "loccmc/sampling.hpp"

namespace {

using namespace loccmc;

Spectrum spec(std::vector<double> v) { return Spectrum::from_probabilities(std::move(v)); }

// Random point on the simplex with a few exact-zero components mixed in.
Spectrum random_simplex_point(std::size_t n, RandomStream& rng) {
    std::vector<double> w(n);
    for (double& x : w) x = -std::log(rng.uniform());
    if (n > 2 && rng.uniform() < 0.2) w[rng.uniform_index(n)] = 0.0;
    return Spectrum::from_weights(std::move(w));
}

// Largest p on the 1e-6 grid with a convex certificate. The certificate is
// monotone in p, so bisection over grid indices finds the grid maximum.
double grid_max_certificate(const Spectrum& x, const Spectrum& y) {
    long lo = 0, hi = 1000000;
    if (convex_certificate(x, y, 1.0)) return 1.0;
    while (hi - lo > 1) {
        const long mid = (lo + hi) / 2;
        if (convex_certificate(x, y, mid * 1e-6)) lo = mid; else hi = mid;
    }
    return lo * 1e-6;
}

}  // namespace

TEST(SuffixSums, Examples) {
    EXPECT_EQ(suffix_sums(spec({1, 0, 0})), (std::vector<double>{1, 0, 0}));
    const auto e = suffix_sums(spec({0.5, 0.3, 0.2}));
    EXPECT_EQ(e[0], 1.0);
    EXPECT_NEAR(e[1], 0.5, 1e-15);
    EXPECT_NEAR(e[2], 0.2, 1e-15);
    EXPECT_EQ(suffix_sums(uniform_spectrum(4)), (std::vector<double>{1, 0.75, 0.5, 0.25}));
}

TEST(Majorizes, HandExamples) {
    const auto r = majorizes(spec({0.6, 0.2, 0.2}), spec({0.5, 0.45, 0.05}));
    EXPECT_TRUE(r.incomparable);
    EXPECT_FALSE(r.x_majorized_by_y);
    EXPECT_FALSE(r.y_majorized_by_x);

    const auto s = majorizes(spec({0.4, 0.4, 0.2}), spec({0.5, 0.3, 0.2}));
    EXPECT_TRUE(s.x_majorized_by_y);
    EXPECT_FALSE(s.y_majorized_by_x);
    EXPECT_FALSE(s.incomparable);
}

TEST(Majorizes, ExtremalVectorsBoundEverySpectrum) {
    RandomStream rng(5);
    for (std::size_t n = 2; n <= 32; ++n) {
        for (int i = 0; i < 1000 / 31 + 1; ++i) {
            const Spectrum x = sample_spectrum(static_cast<int>(n), static_cast<int>(n) + 3, rng);
            EXPECT_TRUE(majorizes(uniform_spectrum(n), x).x_majorized_by_y);
            EXPECT_TRUE(majorizes(x, pure_spectrum(n)).x_majorized_by_y);
        }
    }
}

TEST(Majorizes, LengthMismatchThrows) {
    EXPECT_THROW(majorizes(uniform_spectrum(2), uniform_spectrum(3)), InvalidArgument);
    EXPECT_THROW(vidal_pi(uniform_spectrum(2), uniform_spectrum(3)), InvalidArgument);
    EXPECT_THROW(convex_certificate(uniform_spectrum(2), uniform_spectrum(3), 0.5), InvalidArgument);
}

TEST(Majorizes, IsTransitive) {
    RandomStream rng(6);
    int chains = 0;
    for (int i = 0; i < 20000; ++i) {
        const Spectrum x = random_simplex_point(4, rng);
        const Spectrum y = random_simplex_point(4, rng);
        const Spectrum z = random_simplex_point(4, rng);
        if (majorizes(x, y).x_majorized_by_y && majorizes(y, z).x_majorized_by_y) {
            ++chains;
            EXPECT_TRUE(majorizes(x, z).x_majorized_by_y);
        }
    }
    EXPECT_GT(chains, 100);
}

TEST(VidalPi, Examples) {
    RandomStream rng(7);
    const Spectrum x = random_simplex_point(6, rng);
    EXPECT_EQ(vidal_pi(x, x), 1.0);
    EXPECT_NEAR(vidal_pi(spec({0.7, 0.3}), spec({0.5, 0.5})), 0.6, 1e-15);
    EXPECT_EQ(vidal_pi(pure_spectrum(4), spec({0.4, 0.3, 0.2, 0.1})), 0.0);
    for (int i = 0; i < 200; ++i) {
        EXPECT_EQ(vidal_pi(uniform_spectrum(5), random_simplex_point(5, rng)), 1.0);
    }
}

TEST(VidalPi, PureTargetIsAlwaysReachable) {
    RandomStream rng(8);
    for (int i = 0; i < 100; ++i) {
        EXPECT_EQ(vidal_pi(random_simplex_point(5, rng), pure_spectrum(5)), 1.0);
    }
}

TEST(VidalPi, OneExactlyWhenMajorized) {
    RandomStream rng(9);
    for (int i = 0; i < 10000; ++i) {
        const std::size_t n = 2 + rng.uniform_index(15);
        const Spectrum x = random_simplex_point(n, rng);
        const Spectrum y = random_simplex_point(n, rng);
        const double pi = vidal_pi(x, y);
        ASSERT_GE(pi, 0.0);
        ASSERT_LE(pi, 1.0);
        ASSERT_EQ(majorizes(x, y).x_majorized_by_y, pi == 1.0);
    }
}

TEST(VidalPi, InvariantUnderPermutingInputs) {
    RandomStream rng(10);
    for (int i = 0; i < 500; ++i) {
        const std::size_t n = 2 + rng.uniform_index(10);
        std::vector<double> a(n), b(n);
        for (double& v : a) v = -std::log(rng.uniform());
        for (double& v : b) v = -std::log(rng.uniform());
        const Spectrum x = Spectrum::from_weights(a);
        const Spectrum y = Spectrum::from_weights(b);
        std::reverse(a.begin(), a.end());
        std::rotate(b.begin(), b.begin() + 1, b.end());
        EXPECT_EQ(vidal_pi(x, y), vidal_pi(Spectrum::from_weights(a), Spectrum::from_weights(b)));
    }
}

TEST(ConvexCertificate, Examples) {
    RandomStream rng(11);
    for (int i = 0; i < 100; ++i) {
        EXPECT_TRUE(convex_certificate(random_simplex_point(6, rng), random_simplex_point(6, rng), 0.0));
    }
    EXPECT_TRUE(convex_certificate(spec({0.7, 0.3}), spec({0.5, 0.5}), 0.6));
    EXPECT_FALSE(convex_certificate(spec({0.7, 0.3}), spec({0.5, 0.5}), 0.61));
    EXPECT_THROW(convex_certificate(spec({0.7, 0.3}), spec({0.5, 0.5}), 1.5), InvalidArgument);
    EXPECT_THROW(convex_certificate(spec({0.7, 0.3}), spec({0.5, 0.5}), -0.1), InvalidArgument);
}

TEST(ConvexCertificate, HoldsAtPiAndFailsJustAbove) {
    RandomStream rng(12);
    int strict = 0;
    for (int i = 0; i < 10000; ++i) {
        const std::size_t n = 2 + rng.uniform_index(15);
        const Spectrum x = sample_spectrum(static_cast<int>(n), static_cast<int>(n), rng);
        const Spectrum y = sample_spectrum(static_cast<int>(n), static_cast<int>(n), rng);
        const double pi = vidal_pi(x, y);
        ASSERT_TRUE(convex_certificate(x, y, pi));
        if (pi + 1e-6 <= 1.0 && pi < 1.0) {
            ++strict;
            ASSERT_FALSE(convex_certificate(x, y, pi + 1e-6));
        }
    }
    EXPECT_GT(strict, 1000);
}

// The maximal p of the convex-mixture characterization is an independent
// route to the same number.
TEST(VidalPi, EqualsGridMaximumOfConvexCertificate) {
    RandomStream rng(13);
    for (int i = 0; i < 10000; ++i) {
        const std::size_t n = 2 + rng.uniform_index(15);
        const Spectrum x = sample_spectrum(static_cast<int>(n), static_cast<int>(n) + 1, rng);
        const Spectrum y = sample_spectrum(static_cast<int>(n), static_cast<int>(n) + 1, rng);
        ASSERT_NEAR(vidal_pi(x, y), grid_max_certificate(x, y), 2e-6);
    }
}

TEST(Spectrum, ConstructionChecks) {
    EXPECT_THROW(Spectrum::from_probabilities({0.5, 0.6}), InvalidArgument);
    EXPECT_THROW(Spectrum::from_probabilities({1.2, -0.2}), InvalidArgument);
    EXPECT_THROW(Spectrum::from_probabilities({}), InvalidArgument);
    EXPECT_THROW(Spectrum::from_weights({0.0, 0.0}), InvalidArgument);
    const Spectrum s = Spectrum::from_probabilities({0.2, 0.5, 0.3});
    EXPECT_EQ(std::vector<double>(s.begin(), s.end()), (std::vector<double>{0.5, 0.3, 0.2}));
}
