#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "irsub/error.hpp"
#include "irsub/graph.hpp"

using namespace irsub;

namespace {

GraphFamilySpec spec(GraphFamily f, std::vector<std::int64_t> params, std::uint64_t seed = 0) {
    GraphFamilySpec s;
    s.family = f;
    s.parameters = std::move(params);
    s.seed = seed;
    return s;
}

void expect_simple_regular(const Graph& g) {
    for (Vertex v = 0; v < g.n(); ++v) {
        const auto nb = g.neighbors(v);
        ASSERT_EQ(nb.size(), g.d());
        for (std::size_t i = 0; i < nb.size(); ++i) {
            EXPECT_NE(nb[i], v);
            if (i > 0) {
                EXPECT_LT(nb[i - 1], nb[i]);
            }
            EXPECT_TRUE(g.adjacent(nb[i], v));
        }
    }
}

}  // namespace

TEST(BuildGraph, Complete4) {
    const Graph g = build_graph(spec(GraphFamily::complete, {4}));
    EXPECT_EQ(g.n(), 4u);
    EXPECT_EQ(g.d(), 3u);
    EXPECT_EQ(g.edge_count(), 6u);
    expect_simple_regular(g);
}

TEST(BuildGraph, CirculantTwoOffsets) {
    const Graph g = build_graph(spec(GraphFamily::circulant, {8, 1, 2}));
    EXPECT_EQ(g.n(), 8u);
    EXPECT_EQ(g.d(), 4u);
    EXPECT_TRUE(g.adjacent(0, 7));
    EXPECT_TRUE(g.adjacent(0, 6));
    EXPECT_FALSE(g.adjacent(0, 4));
    expect_simple_regular(g);
}

TEST(BuildGraph, CirculantHalfOffsetCountsOnce) {
    const Graph g = build_graph(spec(GraphFamily::circulant, {6, 1, 3}));
    EXPECT_EQ(g.d(), 3u);
    expect_simple_regular(g);
}

TEST(BuildGraph, CirculantRejectsBadOffsets) {
    EXPECT_THROW(build_graph(spec(GraphFamily::circulant, {8, 0})), InvalidArgument);
    EXPECT_THROW(build_graph(spec(GraphFamily::circulant, {8, 5})), InvalidArgument);
    EXPECT_THROW(build_graph(spec(GraphFamily::circulant, {8, 2, 2})), InvalidArgument);
    EXPECT_THROW(build_graph(spec(GraphFamily::circulant, {8})), InvalidArgument);
}

TEST(BuildGraph, BipartiteHypercubeCliques) {
    const Graph k33 = build_graph(spec(GraphFamily::complete_bipartite, {3}));
    EXPECT_EQ(k33.n(), 6u);
    EXPECT_EQ(k33.d(), 3u);
    const Graph q3 = build_graph(spec(GraphFamily::hypercube, {3}));
    EXPECT_EQ(q3.n(), 8u);
    EXPECT_EQ(q3.d(), 3u);
    const Graph cl = build_graph(spec(GraphFamily::disjoint_cliques, {3, 4}));
    EXPECT_EQ(cl.n(), 12u);
    EXPECT_EQ(cl.d(), 3u);
    EXPECT_FALSE(cl.adjacent(0, 4));
    for (const Graph* g : {&k33, &q3, &cl}) expect_simple_regular(*g);
}

TEST(BuildGraph, RandomRegularGolden) {
    const Graph g = build_graph(spec(GraphFamily::random_regular, {10, 3}, 7));
    const Graph golden = load_graph(std::string(IRSUB_TEST_DATA) + "/random_regular_10_3_7.txt");
    EXPECT_EQ(g, golden);
}

TEST(BuildGraph, RandomRegularIsDeterministicAndSimple) {
    for (const auto strategy : {RegularStrategy::automatic, RegularStrategy::pairing,
                                RegularStrategy::steger_wormald}) {
        auto s = spec(GraphFamily::random_regular, {40, 4}, 11);
        s.strategy = strategy;
        const Graph a = build_graph(s);
        const Graph b = build_graph(s);
        EXPECT_EQ(a, b);
        expect_simple_regular(a);
    }
    const Graph big = build_graph(spec(GraphFamily::random_regular, {100, 10}, 3));
    expect_simple_regular(big);
}

TEST(BuildGraph, RandomRegularErrors) {
    EXPECT_THROW(build_graph(spec(GraphFamily::random_regular, {9, 3}, 1)), InvalidArgument);
    EXPECT_THROW(build_graph(spec(GraphFamily::random_regular, {5, 5}, 1)), InvalidArgument);
    // Whole-graph rejection almost never succeeds at this density.
    auto s = spec(GraphFamily::random_regular, {40, 20}, 1);
    s.strategy = RegularStrategy::pairing;
    EXPECT_THROW(build_graph(s), RetryLimitExceeded);
}

TEST(Codegree, Examples) {
    const Graph k4 = build_graph(spec(GraphFamily::complete, {4}));
    for (Vertex u = 0; u < 4; ++u)
        for (Vertex v = 0; v < 4; ++v)
            if (u != v) {
                EXPECT_EQ(codegree(k4, u, v), 2u);
            }
    const Graph k33 = build_graph(spec(GraphFamily::complete_bipartite, {3}));
    EXPECT_EQ(codegree(k33, 0, 1), 3u);
    EXPECT_EQ(codegree(k33, 0, 4), 0u);
    EXPECT_THROW(codegree(k4, 1, 1), InvalidArgument);
}

TEST(Codegree, SumIdentity) {
    EXPECT_EQ(codegree_sum(build_graph(spec(GraphFamily::complete, {4}))), 24u);
    EXPECT_EQ(codegree_sum(build_graph(spec(GraphFamily::complete, {2}))), 0u);
    EXPECT_EQ(codegree_sum(build_graph(spec(GraphFamily::circulant, {8, 1, 2}))), 96u);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const Graph g = build_graph(spec(GraphFamily::random_regular, {30, 5}, seed));
        EXPECT_EQ(codegree_sum(g), 30u * 5 * 4);
        EXPECT_EQ(codegree_sum_by_wedges(g), codegree_sum(g));
    }
}

TEST(Codegree, Symmetric) {
    const Graph g = build_graph(spec(GraphFamily::random_regular, {20, 3}, 5));
    for (Vertex u = 0; u < g.n(); ++u)
        for (Vertex v = u + 1; v < g.n(); ++v) EXPECT_EQ(codegree(g, u, v), codegree(g, v, u));
}

TEST(EdgeList, RoundTrip) {
    const Graph g = build_graph(spec(GraphFamily::circulant, {8, 1, 2}));
    const std::string text = edge_list_text(g);
    EXPECT_EQ(text.substr(0, 4), "8 4\n");
    std::istringstream in(text);
    EXPECT_EQ(read_edge_list(in, "copy"), g);
}

TEST(EdgeList, RejectsNonRegularNamingVertex) {
    std::istringstream in("4 2\n0 1\n1 2\n2 3\n0 2\n");
    try {
        read_edge_list(in, "bad");
        FAIL() << "expected an error";
    } catch (const InvalidArgument& e) {
        EXPECT_NE(std::string(e.what()).find("vertex"), std::string::npos);
    }
}

TEST(EdgeList, RejectsMalformedInput) {
    std::istringstream missing("");
    EXPECT_THROW(read_edge_list(missing, "x"), InvalidArgument);
    std::istringstream garbage("3 2\n0 1\nfoo bar\n");
    EXPECT_THROW(read_edge_list(garbage, "x"), InvalidArgument);
    std::istringstream loop("2 1\n1 1\n");
    EXPECT_THROW(read_edge_list(loop, "x"), InvalidArgument);
}

TEST(Family, NamesParse) {
    EXPECT_EQ(parse_family("random-regular"), GraphFamily::random_regular);
    EXPECT_EQ(parse_family("random_regular"), GraphFamily::random_regular);
    EXPECT_EQ(parse_family("complete"), GraphFamily::complete);
    EXPECT_THROW(parse_family("petersen"), InvalidArgument);
}
