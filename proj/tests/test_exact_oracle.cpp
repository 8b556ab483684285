#include <gtest/gtest.h>

#include <cmath>

#include "irsub/error.hpp"
#include "irsub/exact_oracle.hpp"
#include "irsub/sampler.hpp"

using namespace irsub;

namespace {

Graph make(GraphFamily f, std::vector<std::int64_t> params) {
    GraphFamilySpec s;
    s.family = f;
    s.parameters = std::move(params);
    return build_graph(s);
}

mpq_class q(long a, long b) {
    mpq_class r(a, b);
    r.canonicalize();
    return r;
}

// Reference values below come from a separate enumeration that realizes each
// order type as concrete weights 1/2 +- (rank+1)/(2(n+1)) and applies the
// threshold rule directly.
struct OracleFixture : ::testing::Test {
    static const OracleTables& circulant8() {
        static const OracleTables t = enumerate_order_types(make(GraphFamily::circulant, {8, 1, 2}));
        return t;
    }
    static const OracleTables& k33() {
        static const OracleTables t = enumerate_order_types(make(GraphFamily::complete_bipartite, {3}));
        return t;
    }
};

}  // namespace

TEST(OrderType, Count) {
    EXPECT_EQ(order_type_count(2), 8u);
    EXPECT_EQ(order_type_count(4), 384u);
    EXPECT_EQ(order_type_count(8), 10321920u);
}

TEST(OrderType, DegreeExamples) {
    const Graph k4 = make(GraphFamily::complete, {4});
    OrderType all{{0, 1, 2, 3}, {true, true, true, true}};
    EXPECT_EQ(degrees_of_order_type(k4, all), std::vector<std::uint32_t>(4, 3));
    OrderType none{{0, 1, 2, 3}, {false, false, false, false}};
    EXPECT_EQ(degrees_of_order_type(k4, none), std::vector<std::uint32_t>(4, 0));

    const Graph k2 = make(GraphFamily::complete, {2});
    OrderType mixed{{1, 0}, {true, false}};
    EXPECT_EQ(degrees_of_order_type(k2, mixed), (std::vector<std::uint32_t>{1, 1}));
    OrderType flipped{{0, 1}, {true, false}};
    EXPECT_EQ(degrees_of_order_type(k2, flipped), (std::vector<std::uint32_t>{0, 0}));
    OrderType wrong{{0}, {true}};
    EXPECT_THROW(degrees_of_order_type(k2, wrong), InvalidArgument);
}

TEST(ExactPmf, UniformLaw) {
    for (const Graph& g : {make(GraphFamily::complete, {2}), make(GraphFamily::complete, {4}),
                           make(GraphFamily::complete, {5}), make(GraphFamily::circulant, {6, 1, 3}),
                           make(GraphFamily::complete_bipartite, {3})}) {
        const auto pmf = exact_degree_pmf(g, 0);
        ASSERT_EQ(pmf.size(), g.d() + 1);
        for (const auto& p : pmf) EXPECT_EQ(p.value(), q(1, g.d() + 1)) << g.descriptor();
    }
    const auto k4 = exact_degree_pmf(make(GraphFamily::complete, {4}), 2);
    EXPECT_EQ(k4[0].str(), "1/4");
}

TEST_F(OracleFixture, PmfSumsToOneOnEveryVertex) {
    const auto& t = circulant8();
    for (Vertex v = 0; v < t.n; ++v) {
        mpq_class s = 0;
        for (const auto& p : exact_degree_pmf(t, v)) s += p.value();
        EXPECT_EQ(s, 1);
    }
}

TEST(ExactJoint, K4Frozen) {
    const Graph k4 = make(GraphFamily::complete, {4});
    const auto t = enumerate_order_types(k4);
    EXPECT_EQ(exact_joint(t, 0, 1, 0).value(), q(7, 48));
    EXPECT_EQ(exact_joint(t, 0, 1, 1).value(), q(5, 48));
    for (std::uint32_t k = 0; k <= 3; ++k) EXPECT_LE(exact_joint(t, 0, 1, k).value(), q(9, 16));
    EXPECT_EQ(joint_bound(3, 2), q(9, 16));
}

TEST_F(OracleFixture, K33Frozen) {
    const auto& t = k33();
    // same side, codegree 3
    EXPECT_EQ(exact_joint(t, 0, 1, 0).value(), q(1, 10));
    EXPECT_EQ(exact_joint(t, 0, 2, 3).value(), q(1, 10));
    EXPECT_LE(exact_joint(t, 0, 1, 0).value(), joint_bound(3, 3));
    EXPECT_EQ(joint_bound(3, 3), q(13, 16));
    // adjacent, codegree 0
    EXPECT_EQ(exact_joint(t, 0, 5, 0).value(), q(19, 180));
    EXPECT_EQ(exact_joint(t, 0, 5, 1).value(), q(11, 180));
    EXPECT_EQ(exact_mean_var(t, 0).variance, q(47, 20));
    EXPECT_EQ(exact_mean_var(t, 1).variance, q(31, 20));
}

TEST_F(OracleFixture, JointSymmetric) {
    const auto& t = circulant8();
    for (std::uint32_t k = 0; k <= t.d; ++k)
        for (Vertex u = 0; u < t.n; ++u)
            for (Vertex v = u + 1; v < t.n; ++v) EXPECT_EQ(exact_joint(t, u, v, k), exact_joint(t, v, u, k));
}

TEST(ExactJoint, DisjointComponentsIndependent) {
    const Graph two = make(GraphFamily::disjoint_cliques, {2, 2});
    EXPECT_EQ(exact_joint(two, 0, 2, 0).value(), q(1, 4));
    EXPECT_THROW(exact_joint(two, 1, 1, 0), InvalidArgument);
}

TEST(ExactMeanVar, K2) {
    const auto m = exact_mean_var(make(GraphFamily::complete, {2}), 0);
    EXPECT_EQ(m.mean, 1);
    EXPECT_EQ(m.variance, 1);
    EXPECT_EQ(fraction_string(m.mean), "1/1");
}

TEST(ExactMeanVar, K4Frozen) {
    const auto t = enumerate_order_types(make(GraphFamily::complete, {4}));
    EXPECT_EQ(exact_mean_var(t, 0).variance, q(7, 4));
    EXPECT_EQ(exact_mean_var(t, 1).variance, q(5, 4));
    for (std::uint32_t k = 0; k <= 3; ++k) EXPECT_EQ(exact_mean_var(t, k).mean, 1);
}

TEST_F(OracleFixture, Circulant8Frozen) {
    const auto& t = circulant8();
    const mpq_class expected[] = {q(66, 25), q(2768, 1575), q(2053, 1575), q(2768, 1575), q(66, 25)};
    mpq_class mean_sum = 0;
    for (std::uint32_t k = 0; k <= 4; ++k) {
        const auto m = exact_mean_var(t, k);
        EXPECT_EQ(m.mean, q(8, 5));
        EXPECT_EQ(m.variance, expected[k]) << "k=" << k;
        EXPECT_EQ(variance_from_joints(t, k), m.variance);
        EXPECT_LE(m.variance, variance_cap(8, 4));
        mean_sum += m.mean;
    }
    EXPECT_EQ(mean_sum, 8);
    EXPECT_EQ(variance_cap(8, 4), q(136, 5));
    EXPECT_EQ(exact_joint(t, 0, 1, 2).value(), q(59, 1440));
    EXPECT_EQ(exact_joint(t, 0, 2, 2).value(), q(359, 10080));
}

TEST(Oracle, ThreadCountDoesNotMatter) {
    const Graph g = make(GraphFamily::circulant, {7, 1, 2});
    const auto a = enumerate_order_types(g, {8, 1});
    const auto b = enumerate_order_types(g, {8, 3});
    EXPECT_EQ(a.vertex_degree, b.vertex_degree);
    EXPECT_EQ(a.joint, b.joint);
    EXPECT_EQ(a.count_distribution, b.count_distribution);
}

TEST(Oracle, CapErrorCarriesCost) {
    const Graph g = make(GraphFamily::circulant, {9, 1, 2});
    try {
        exact_degree_pmf(g, 0);
        FAIL() << "expected CapExceeded";
    } catch (const CapExceeded& e) {
        EXPECT_NE(std::string(e.what()).find("n=9"), std::string::npos);
    }
}

TEST(Oracle, WorstJointRatioFlagsAdjacentCodegreeZero) {
    const Graph k2 = make(GraphFamily::complete, {2});
    const auto r = worst_joint_ratio(k2, enumerate_order_types(k2));
    EXPECT_EQ(r.ratio, 2);
}

// Empirical frequencies sit within 4 standard errors of the exact values.
TEST_F(OracleFixture, MonteCarloConvergence) {
    const auto& t = circulant8();
    const Graph g = make(GraphFamily::circulant, {8, 1, 2});
    const int trials = 200000;
    std::vector<int> hits(5, 0);
    for (int i = 0; i < trials; ++i) hits[subgraph_degrees(g, sample_weights(8, 31, i).x)[3]]++;
    for (std::uint32_t k = 0; k <= 4; ++k) {
        const double p = exact_degree_pmf(t, 3)[k].to_double();
        EXPECT_NEAR(double(hits[k]) / trials, p, 4 * std::sqrt(p * (1 - p) / trials));
    }
}
