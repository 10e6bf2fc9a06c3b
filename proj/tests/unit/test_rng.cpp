#include <gtest/gtest.h>

#include <cmath>
#include <set>
#include <vector>

#include "cobra/rng.hpp"

using cobra::Rng;

// Reference outputs from an independent transcription of splitmix64 + xoshiro256**.
TEST(Rng, MatchesReferenceStream) {
    Rng a(0);
    EXPECT_EQ(a(), 0x99ec5f36cb75f2b4ULL);
    EXPECT_EQ(a(), 0xbf6e1f784956452aULL);
    EXPECT_EQ(a(), 0x1a5f849d4933e6e0ULL);
    Rng b(12345);
    EXPECT_EQ(b(), 0xbe6a36374160d49bULL);
    EXPECT_EQ(b(), 0x214aaa0637a688c6ULL);
    EXPECT_EQ(b(), 0xf69d16de9954d388ULL);
}

TEST(Rng, StreamSeedReference) {
    EXPECT_EQ(cobra::stream_seed(42, 0), 0x02e27a83ece52600ULL);
    EXPECT_EQ(cobra::stream_seed(42, 7), 0x26eafd5bcb5236e6ULL);
}

TEST(Rng, StreamSeedsDistinct) {
    std::set<std::uint64_t> seen;
    for (std::uint64_t m = 0; m < 4; ++m)
        for (std::uint64_t i = 0; i < 5000; ++i) seen.insert(cobra::stream_seed(m, i));
    EXPECT_EQ(seen.size(), 20000u);
}

TEST(Rng, BelowStaysInRangeAndIsRoughlyUniform) {
    Rng r(7);
    const std::uint64_t bound = 7;
    std::vector<int> counts(bound, 0);
    const int draws = 70000;
    for (int i = 0; i < draws; ++i) {
        const auto x = r.below(bound);
        ASSERT_LT(x, bound);
        ++counts[x];
    }
    double chi = 0;
    for (int c : counts) chi += (c - 10000.0) * (c - 10000.0) / 10000.0;
    EXPECT_LT(chi, 22.5);  // 6 dof, p ~ 0.001
}

TEST(Rng, BelowOneIsZero) {
    Rng r(3);
    for (int i = 0; i < 100; ++i) EXPECT_EQ(r.below(1), 0u);
}

TEST(Rng, UniformAndCoin) {
    Rng r(11);
    double s = 0;
    int heads = 0;
    for (int i = 0; i < 100000; ++i) {
        const double u = r.uniform();
        ASSERT_GE(u, 0.0);
        ASSERT_LT(u, 1.0);
        s += u;
        heads += r.coin();
    }
    EXPECT_NEAR(s / 100000, 0.5, 0.005);
    EXPECT_NEAR(heads / 100000.0, 0.5, 0.005);
}

TEST(Rng, ReseedRestartsStream) {
    Rng a(99);
    const auto x = a();
    a.coin();
    a.reseed(99);
    EXPECT_EQ(a(), x);
}
