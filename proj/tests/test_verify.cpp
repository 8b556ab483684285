#include <gtest/gtest.h>

#include "irsub/sampler.hpp"
#include "irsub/verify.hpp"

using namespace irsub;

namespace {

ordered_json tiny_config() {
    return ordered_json::parse(R"({
      "seed": 11,
      "checks": {
        "exact": [{"graph": {"family": "complete", "n": 4}, "k": "all"}],
        "monte_carlo": [{"graph": {"family": "complete", "n": 4}, "k": [0, 3], "trials": 2000}],
        "variance": [{"graph": {"family": "circulant", "n": 30, "offsets": [1, 2]}, "k": 2, "trials": 200}],
        "martingale": [{"graph": {"family": "circulant", "n": 20, "offsets": [1, 2]}, "k": [1], "traces": 4}],
        "codegree": [{"n": 20, "d": 3, "graphs": 2}]
      }
    })");
}

std::string error_path(const ordered_json& doc) {
    try {
        parse_verify_config(doc);
    } catch (const ConfigError& e) {
        return e.path();
    }
    return "";
}

}  // namespace

TEST(VerifyConfig, BundledSmokeParses) {
    const auto cfg = load_verify_config(std::string(IRSUB_CONFIG_DIR) + "/smoke.json");
    ASSERT_TRUE(cfg.seed.has_value());
    EXPECT_EQ(cfg.exact.size(), 3u);
    EXPECT_EQ(cfg.exact[0].spec.family, GraphFamily::complete);
    EXPECT_TRUE(cfg.exact[0].ks.empty());
}

TEST(VerifyConfig, UnknownKeyNamesPath) {
    auto doc = tiny_config();
    doc["checks"]["monte_carlo"][0]["trails"] = 5;
    EXPECT_EQ(error_path(doc), "checks.monte_carlo[0].trails");
    auto top = tiny_config();
    top["sead"] = 1;
    EXPECT_EQ(error_path(top), "sead");
}

TEST(VerifyConfig, VarianceTrialsOfOneRejected) {
    auto doc = tiny_config();
    doc["checks"]["variance"][0]["trials"] = 1;
    EXPECT_EQ(error_path(doc), "checks.variance[0].trials");
}

TEST(VerifyConfig, GraphSpecErrors) {
    auto doc = tiny_config();
    doc["checks"]["exact"][0]["graph"]["family"] = "petersen";
    EXPECT_EQ(error_path(doc), "checks.exact[0].graph.family");
    auto missing = tiny_config();
    missing["checks"]["exact"][0]["graph"].erase("n");
    EXPECT_EQ(error_path(missing), "checks.exact[0].graph.n");
}

TEST(VerifyConfig, GraphSpecFamilies) {
    const auto rr = parse_graph_spec(ordered_json::parse(R"({"family": "random_regular", "n": 10, "d": 3, "seed": 7})"), "g");
    EXPECT_EQ(build_graph(rr).n(), 10u);
    const auto cl = parse_graph_spec(ordered_json::parse(R"({"family": "disjoint_cliques", "count": 2, "size": 3})"), "g");
    EXPECT_EQ(build_graph(cl).d(), 2u);
}

TEST(RunVerify, DeterministicAcrossThreads) {
    const auto cfg = parse_verify_config(tiny_config());
    const auto a = run_verify(cfg, 11, 1);
    const auto b = run_verify(cfg, 11, 3);
    EXPECT_EQ(a.dump(), b.dump());
    EXPECT_TRUE(a.passed());
    const auto c = run_verify(cfg, 12, 1);
    EXPECT_NE(a.dump(), c.dump());
}
