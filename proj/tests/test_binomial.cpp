#include <gtest/gtest.h>

#include <cmath>

#include "irsub/binomial.hpp"
#include "irsub/error.hpp"

using namespace irsub;

TEST(BinomialPoint, Examples) {
    EXPECT_DOUBLE_EQ(binomial_point(0.5, 2, 1), 0.5);
    EXPECT_EQ(binomial_point(0.3, 5, -1), 0.0);
    EXPECT_EQ(binomial_point(0.3, 5, 6), 0.0);
    for (double x : {0.0, 0.2, 1.0}) EXPECT_EQ(binomial_point(x, 0, 0), 1.0);
    EXPECT_NEAR(binomial_point(0.5, 10, 4), 210.0 / 1024, 1e-15);
}

TEST(BinomialPoint, LargeTrialsStayFinite) {
    const double p = binomial_point(0.37, 5000, 1850);
    EXPECT_TRUE(std::isfinite(p));
    EXPECT_GT(p, 0.0);
    double sum = 0.0;
    for (int h = 0; h <= 2000; ++h) sum += binomial_point(0.3, 2000, h);
    EXPECT_NEAR(sum, 1.0, 1e-10);
}

TEST(BinomialTail, DirectAndBetaAgree) {
    for (std::int64_t trials = 1; trials <= 60; ++trials)
        for (double s : {0.01, 0.2, 0.5, 0.77, 0.999})
            for (std::int64_t m = 0; m <= trials + 1; ++m)
                EXPECT_NEAR(binomial_upper_tail_direct(trials, s, m), binomial_upper_tail_beta(trials, s, m), 1e-12)
                    << trials << " " << s << " " << m;
}

TEST(BinomialTail, PairMatchesSingles) {
    for (std::int64_t trials : {5, 40}) {
        const auto pair = binomial_upper_tail_pair(trials, 0.4, 3);
        EXPECT_NEAR(pair.at_least, binomial_upper_tail(trials, 0.4, 3), 1e-14);
        EXPECT_NEAR(pair.above, binomial_upper_tail(trials, 0.4, 4), 1e-14);
    }
}

TEST(PowerTable, MatchesDirectEvaluation) {
    for (double y : {0.0, 1e-9, 0.3, 0.5, 0.91, 1.0}) {
        const PowerTable table(y, 62);
        for (std::int64_t t = 0; t <= 62; ++t)
            for (std::int64_t h = -1; h <= t + 1; ++h) {
                EXPECT_NEAR(table.point(t, h), binomial_point(y, t, h), 1e-14);
                EXPECT_NEAR(table.upper_tail(t, h), binomial_upper_tail(t, y, h), 1e-12);
            }
    }
    EXPECT_THROW(PowerTable(0.5, 100), InvalidArgument);
}

TEST(SegmentIntegral, Examples) {
    for (std::int64_t t : {0, 1, 5, 30, 31, 200})
        for (std::int64_t h = 0; h <= t; h += std::max<std::int64_t>(1, t / 7))
            EXPECT_NEAR(binomial_segment_integral(0.0, 1.0, t, h), 1.0 / (t + 1), 1e-12);
    EXPECT_EQ(binomial_segment_integral(0.0, 1.0, 4, -1), 0.0);
    EXPECT_NEAR(binomial_segment_integral(0.0, 0.5, 1, 0), 0.375, 1e-15);
    EXPECT_THROW(binomial_segment_integral(0.6, 0.5, 2, 1), InvalidArgument);
}

TEST(SegmentIntegral, AgreesWithPolynomialAntiderivative) {
    // ∫_a^b 3 y^2 (1-y) dy for t = 3, h = 2
    const auto F = [](double y) { return y * y * y - 0.75 * y * y * y * y; };
    EXPECT_NEAR(binomial_segment_integral(0.2, 0.7, 3, 2), F(0.7) - F(0.2), 1e-14);
}
