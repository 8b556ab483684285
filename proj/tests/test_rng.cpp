#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "irsub/rng.hpp"

using namespace irsub;

TEST(Stream, SameSeedAndIndexRepeat) {
    Stream a(42, 7);
    Stream b(42, 7);
    for (int i = 0; i < 100; ++i) EXPECT_EQ(a.next_u64(), b.next_u64());
}

TEST(Stream, IndicesAreDistinctStreams) {
    Stream a(42, 0);
    Stream b(42, 1);
    Stream c(43, 0);
    const auto x = a.next_u64();
    EXPECT_NE(x, b.next_u64());
    EXPECT_NE(x, c.next_u64());
}

TEST(Stream, UniformIsHalfOpen) {
    Stream s(1, 1);
    for (int i = 0; i < 100000; ++i) {
        const double u = s.uniform();
        ASSERT_GE(u, 0.0);
        ASSERT_LT(u, 1.0);
    }
}

TEST(Stream, BelowStaysInRangeAndCoversIt) {
    Stream s(3, 9);
    std::set<std::uint64_t> seen;
    for (int i = 0; i < 2000; ++i) {
        const auto v = s.below(7);
        ASSERT_LT(v, 7u);
        seen.insert(v);
    }
    EXPECT_EQ(seen.size(), 7u);
}

TEST(Stream, PermutationIsAPermutation) {
    Stream s(5, 2);
    auto p = s.permutation(50);
    std::sort(p.begin(), p.end());
    for (std::uint32_t i = 0; i < 50; ++i) EXPECT_EQ(p[i], i);
}

TEST(DeriveSeed, SeparatesTags) {
    EXPECT_NE(derive_seed(1, 0), derive_seed(1, 1));
    EXPECT_NE(derive_seed(1, 0), derive_seed(2, 0));
    EXPECT_EQ(derive_seed(9, 4), derive_seed(9, 4));
}
