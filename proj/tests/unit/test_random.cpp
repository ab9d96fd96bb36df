#include <gtest/gtest.h>

#include <cmath>
#include <set>
#include <vector>

#include "loccmc/random.hpp"

using loccmc::Philox4x64;
using loccmc::RandomStream;

// Reference blocks from numpy.random.Philox(key=..., counter=...).random_raw(4);
// numpy increments the counter before generating, as we do.
TEST(Philox, MatchesReferenceZeroKey) {
    Philox4x64 g({0, 0}, {0, 0, 0, 0});
    EXPECT_EQ(g(), 0x02f4ba6408e4d89bULL);
    EXPECT_EQ(g(), 0x3dd62b0b9ca8c5b2ULL);
    EXPECT_EQ(g(), 0x1c8667a55d902e79ULL);
    EXPECT_EQ(g(), 0x907d7a052fd5b4dcULL);
}

TEST(Philox, MatchesReferenceNonzeroKeyAndCounter) {
    Philox4x64 g({0x0123456789abcdefULL, 0}, {5, 0, 0, 0});
    EXPECT_EQ(g(), 0xab5ee84bde87d94aULL);
    EXPECT_EQ(g(), 0xa8cbc418bdf23b96ULL);
    EXPECT_EQ(g(), 0x2546385a7cd43ae2ULL);
    EXPECT_EQ(g(), 0x70124772acad3bb7ULL);
}

TEST(Philox, CounterCarryPropagates) {
    Philox4x64 g({7, 9}, {~0ULL, 3, 0, 0});
    EXPECT_EQ(g(), 0x4fde0477ac8f6d97ULL);
    EXPECT_EQ(g(), 0x3a93a6e7cb605404ULL);
    EXPECT_EQ(g(), 0x1c54a26ea929b5f8ULL);
    EXPECT_EQ(g(), 0x6461efd030d51c5eULL);
    EXPECT_EQ(g.counter()[0], 0u);
    EXPECT_EQ(g.counter()[1], 4u);
}

TEST(RandomStream, StreamsAreReproducibleAndDistinct) {
    RandomStream a(42, 3), b(42, 3), c(42, 4), d(43, 3);
    std::set<std::uint64_t> seen;
    for (int i = 0; i < 64; ++i) {
        const auto va = a.next_u64();
        EXPECT_EQ(va, b.next_u64());
        seen.insert(va);
        seen.insert(c.next_u64());
        seen.insert(d.next_u64());
    }
    EXPECT_EQ(seen.size(), 3u * 64u);
}

TEST(RandomStream, UniformIsInOpenUnitIntervalWithCorrectMoments) {
    RandomStream rng(1);
    const int n = 200000;
    double sum = 0, sumsq = 0;
    for (int i = 0; i < n; ++i) {
        const double u = rng.uniform();
        ASSERT_GT(u, 0.0);
        ASSERT_LT(u, 1.0);
        sum += u;
        sumsq += u * u;
    }
    const double mean = sum / n;
    EXPECT_NEAR(mean, 0.5, 4 * std::sqrt(1.0 / 12 / n));
    EXPECT_NEAR(sumsq / n - mean * mean, 1.0 / 12, 0.002);
}

TEST(RandomStream, NormalMoments) {
    RandomStream rng(2);
    const int n = 400000;
    double sum = 0, sumsq = 0, sum4 = 0;
    for (int i = 0; i < n; ++i) {
        const double z = rng.normal();
        sum += z;
        sumsq += z * z;
        sum4 += z * z * z * z;
    }
    EXPECT_NEAR(sum / n, 0.0, 4 / std::sqrt(n));
    EXPECT_NEAR(sumsq / n, 1.0, 4 * std::sqrt(2.0 / n));
    EXPECT_NEAR(sum4 / n, 3.0, 4 * std::sqrt(96.0 / n));
}

TEST(RandomStream, UniformIndexCoversRangeEvenly) {
    RandomStream rng(3);
    std::vector<int> counts(7, 0);
    const int n = 70000;
    for (int i = 0; i < n; ++i) {
        const auto k = rng.uniform_index(7);
        ASSERT_LT(k, 7u);
        ++counts[k];
    }
    for (int c : counts) EXPECT_NEAR(c, n / 7.0, 4 * std::sqrt(n / 7.0));
}
