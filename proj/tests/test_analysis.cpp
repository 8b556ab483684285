#include <gtest/gtest.h>

#include <cmath>

#include "irsub/analysis.hpp"
#include "irsub/error.hpp"
#include "irsub/sampler.hpp"

using namespace irsub;

namespace {

GraphFamilySpec spec(GraphFamily f, std::vector<std::int64_t> params, std::uint64_t seed = 0) {
    GraphFamilySpec s;
    s.family = f;
    s.parameters = std::move(params);
    s.seed = seed;
    return s;
}

}  // namespace

TEST(MonteCarlo, K4MeansAndThreadIndependence) {
    ExperimentConfig cfg;
    cfg.graph = spec(GraphFamily::complete, {4});
    cfg.trials = 100000;
    cfg.master_seed = 5;
    const auto r1 = run_monte_carlo(cfg);
    cfg.threads = 3;
    const auto r3 = run_monte_carlo(cfg);
    ASSERT_EQ(r1.per_k.size(), 4u);
    for (std::size_t i = 0; i < 4; ++i) {
        EXPECT_NEAR(r1.per_k[i].summary.mean, 1.0, 0.05);
        EXPECT_EQ(r1.per_k[i].summary.mean, r3.per_k[i].summary.mean);
        EXPECT_EQ(r1.per_k[i].summary.variance, r3.per_k[i].summary.variance);
    }
    for (const auto& c : check_means(r1)) EXPECT_TRUE(c.passed) << c.name;
}

TEST(MonteCarlo, SingleTrialHasUndefinedVariance) {
    ExperimentConfig cfg;
    cfg.graph = spec(GraphFamily::complete, {4});
    cfg.trials = 1;
    const auto r = run_monte_carlo(cfg);
    for (const auto& s : r.per_k) {
        EXPECT_FALSE(s.variance_defined);
        EXPECT_TRUE(std::isnan(s.summary.variance));
    }
    cfg.trials = 0;
    EXPECT_THROW(run_monte_carlo(cfg), InvalidArgument);
}

TEST(VarianceBound, ChiSquareUpperBound) {
    // chi-square 1% quantile with 99 degrees of freedom is 69.2299
    EXPECT_NEAR(variance_upper_bound(1.0, 100), 99.0 / 69.2299, 1e-4);
    EXPECT_THROW(variance_upper_bound(1.0, 1), InvalidArgument);
}

TEST(VarianceBound, ExactModeK2) {
    const Graph k2 = build_graph(spec(GraphFamily::complete, {2}));
    const auto c = verify_variance_bound(k2, 0, 0, 1);
    EXPECT_EQ(c.mode, CheckMode::exact);
    EXPECT_EQ(c.variance, 1.0);
    EXPECT_EQ(c.cap, 17.0);
    EXPECT_TRUE(c.passed);
}

TEST(VarianceBound, SamplingMode) {
    const Graph g = build_graph(spec(GraphFamily::circulant, {100, 1, 2, 3}));
    const auto c = verify_variance_bound(g, 2, 500, 3);
    EXPECT_EQ(c.mode, CheckMode::sampling);
    EXPECT_TRUE(c.passed);
    EXPECT_NEAR(c.limit, 1.1 * 17 * 100 / 7.0, 1e-9);
    EXPECT_THROW(verify_variance_bound(g, 2, 99, 3), InvalidArgument);
}

TEST(Concentration, EdgeRows) {
    const Graph g = build_graph(spec(GraphFamily::circulant, {40, 1, 2}));
    ConcentrationOptions opt;
    opt.pilot_traces = 20;
    const std::vector<double> z{0.0, 3.0, 1000.0};
    const auto r = concentration_report(g, 2, 1000, 6, z, opt);
    EXPECT_EQ(r.rows[0].empirical, 1.0);
    EXPECT_EQ(r.rows[0].chebyshev, 1.0);
    EXPECT_EQ(r.rows[2].empirical, 0.0);
    EXPECT_TRUE(r.monotone);
    EXPECT_TRUE(r.passed());
    EXPECT_THROW(concentration_report(g, 2, 999, 6, z, opt), InvalidArgument);
}

TEST(ExactChebyshev, HoldsOnCirculant) {
    const Graph g = build_graph(spec(GraphFamily::circulant, {7, 1, 2}));
    const auto t = enumerate_order_types(g);
    const std::vector<double> z{0.0, 0.5, 1.0, 2.0, 3.5};
    for (const auto& row : exact_chebyshev_check(t, 2, z)) EXPECT_TRUE(row.passed) << row.z;
}

TEST(FInequality, SpotValue) {
    const double f = kl_exponent(0.5, 0.25);
    EXPECT_NEAR(f, 0.25 * std::log(2.0) + 0.75 * std::log(2.0 / 3.0), 1e-15);
    EXPECT_NEAR(f, -0.1308, 1e-4);
    EXPECT_NEAR(-f / std::min(0.25, 4 * 0.0625), 0.5232, 1e-4);
    EXPECT_EQ(kl_exponent(0.3, 0.3), 0.0);
}

TEST(FInequality, Grid) {
    const auto r = check_f_inequality(150);
    EXPECT_TRUE(r.passed());
    EXPECT_LE(r.max_f, 0.0);
    EXPECT_GT(r.c_hat, 0.0);
    EXPECT_THROW(check_f_inequality(99), InvalidArgument);
}

TEST(Stirling, StepExample) {
    EXPECT_NEAR(binomial_step(0.5, 10, 4), 42.0 / 1024, 1e-15);
    EXPECT_THROW(stirling_bound(0.5, 10, 0), InvalidArgument);
    EXPECT_THROW(stirling_bound(0.5, 10, 9), InvalidArgument);
    const auto r = check_stirling_delta(2000, 1);
    EXPECT_TRUE(r.passed());
    EXPECT_THROW(check_stirling_delta(999, 1), InvalidArgument);
}

TEST(IntervalClaims, WholeIntervalHasNoEmptyGap) {
    const auto r = interval_claims_stats(200, 200.0, 100, 3);
    EXPECT_EQ(r.empty_gap.hits, 0u);
    EXPECT_TRUE(r.passed());
}

TEST(IntervalClaims, Passes) {
    const auto r = interval_claims_stats(2000, 20.0, 200, 4);
    EXPECT_TRUE(r.passed());
    EXPECT_NEAR(r.overfill.bound, std::exp(-20.0 / 3), 1e-15);
    EXPECT_THROW(interval_claims_stats(99, 20.0, 200, 4), InvalidArgument);
}

TEST(Traces, ExactnessAndThreads) {
    const Graph g = build_graph(spec(GraphFamily::circulant, {50, 1, 2, 4}));
    const auto r = check_martingale_exactness(g, 3, 10, 8);
    EXPECT_TRUE(r.passed());
    const auto a = run_traces(g, 3, 6, 8, {}, true, 1);
    const auto b = run_traces(g, 3, 6, 8, {}, true, 3);
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a[i].variance_proxy, b[i].variance_proxy);
        EXPECT_EQ(a[i].xn, double(a[i].recount));
    }
}

TEST(Traces, K2IncrementCap) {
    const Graph k2 = build_graph(spec(GraphFamily::complete, {2}));
    for (std::uint64_t i = 0; i < 50; ++i) {
        // Y_1 = 2(x - 1/2) for whichever endpoint arrives first
        const auto tr = random_trace(k2, 1, 2, i);
        Stream s(2, i);
        const auto w = sample_weights(2, s);
        const auto order = s.permutation(2);
        EXPECT_NEAR(tr.y_values[0], 2.0 * (w.x[order[0]] - 0.5), 1e-14);
        EXPECT_LE(std::abs(tr.y_values[0]), 1.0);
    }
}

TEST(Scaling, NeedsThreeIncreasingSizes) {
    const std::vector<std::uint32_t> one{200};
    EXPECT_THROW(scaling_study(GraphFamily::circulant, one, 20, 10, 1), InvalidArgument);
    const std::vector<std::uint32_t> unsorted{400, 200, 800};
    EXPECT_THROW(scaling_study(GraphFamily::circulant, unsorted, 20, 10, 1), InvalidArgument);
}

TEST(Scaling, SmallRun) {
    const std::vector<std::uint32_t> ns{40, 80, 160};
    const auto t = scaling_study(GraphFamily::circulant, ns, 4, 10, 2);
    ASSERT_EQ(t.rows.size(), 3u);
    for (const auto& row : t.rows) {
        EXPECT_GT(row.increment_quantile, 0.0);
        EXPECT_NEAR(row.increment_ratio, row.increment_quantile / std::log(double(row.n)), 1e-12);
    }
}

TEST(FamilyWithDegree, Degrees) {
    for (const auto f : {GraphFamily::circulant, GraphFamily::random_regular, GraphFamily::disjoint_cliques}) {
        const Graph g = build_graph(family_with_degree(f, 60, 5, 1));
        EXPECT_EQ(g.n(), 60u);
        EXPECT_EQ(g.d(), 5u);
    }
}

TEST(CodegreeIdentity, RandomGraphs) {
    const std::vector<CodegreeCase> cases{{20, 3, 5}, {50, 5, 5}};
    const auto rows = check_codegree_identity(cases, 1);
    EXPECT_EQ(rows.size(), 10u);
    for (const auto& r : rows) EXPECT_TRUE(r.passed()) << r.graph;
}
