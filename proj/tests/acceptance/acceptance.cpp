// Acceptance report: one PASS/FAIL line per criterion, pinned tolerances.
// Exit status 1 when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "irsub/analysis.hpp"
#include "irsub/exact_oracle.hpp"
#include "irsub/parallel.hpp"
#include "irsub/rng.hpp"
#include "irsub/verify.hpp"

using namespace irsub;

namespace {

constexpr std::uint64_t kSeed = 20261019;

struct Outcome {
    bool passed = false;
    std::string detail;
};

GraphFamilySpec spec(GraphFamily f, std::vector<std::int64_t> params) {
    GraphFamilySpec s;
    s.family = f;
    s.parameters = std::move(params);
    return s;
}

// Every n <= 8 graph the exact criteria run on.
std::vector<Graph> small_graphs() {
    return {build_graph(spec(GraphFamily::complete, {2})),
            build_graph(spec(GraphFamily::complete, {4})),
            build_graph(spec(GraphFamily::complete, {5})),
            build_graph(spec(GraphFamily::complete_bipartite, {3})),
            build_graph(spec(GraphFamily::circulant, {8, 1, 2})),
            build_graph(spec(GraphFamily::circulant, {6, 1, 3})),
            build_graph(spec(GraphFamily::hypercube, {3}))};
}

struct Exact {
    Graph graph;
    OracleTables tables;
};

const std::vector<Exact>& exact_tables() {
    static const std::vector<Exact> all = [] {
        std::vector<Exact> v;
        for (auto& g : small_graphs()) {
            OracleOptions opt;
            opt.threads = default_threads();
            auto t = enumerate_order_types(g, opt);
            v.push_back({std::move(g), std::move(t)});
        }
        return v;
    }();
    return all;
}

std::string fmt(double v) {
    std::ostringstream s;
    s.precision(6);
    s << v;
    return s.str();
}

Outcome degree_law() {
    const std::vector<Graph> graphs{build_graph(spec(GraphFamily::complete, {2})),
                                    build_graph(spec(GraphFamily::complete, {4})),
                                    build_graph(spec(GraphFamily::complete, {5})),
                                    build_graph(spec(GraphFamily::complete_bipartite, {3})),
                                    build_graph(spec(GraphFamily::circulant, {8, 1, 2}))};
    Outcome o{true, ""};
    std::uint64_t entries = 0;
    for (const auto& g : graphs) {
        const auto* e = [&]() -> const Exact* {
            for (const auto& x : exact_tables())
                if (x.graph == g) return &x;
            return nullptr;
        }();
        mpq_class want(1, g.d() + 1);
        want.canonicalize();
        for (Vertex v = 0; v < g.n(); ++v)
            for (const auto& p : exact_degree_pmf(e->tables, v)) {
                ++entries;
                if (p.value() != want) {
                    o.passed = false;
                    o.detail = g.descriptor() + " vertex " + std::to_string(v) + " has " + p.str();
                }
            }
    }
    if (o.passed) o.detail = std::to_string(entries) + " pmf entries equal 1/(d+1) on 5 graphs";
    return o;
}

Outcome variance_bound() {
    Outcome o{true, ""};
    mpq_class worst = 0;
    std::string where;
    for (const auto& e : exact_tables())
        for (std::uint32_t k = 0; k <= e.graph.d(); ++k) {
            const auto m = exact_mean_var(e.tables, k);
            const mpq_class cap = variance_cap(e.graph.n(), e.graph.d());
            const mpq_class ratio = m.variance / cap;
            if (ratio > worst) {
                worst = ratio;
                where = e.graph.descriptor() + " k=" + std::to_string(k) + " Var=" + fraction_string(m.variance);
            }
            if (!(m.variance <= cap)) o.passed = false;
        }
    o.detail = "worst Var/(17n/(d+1)) = " + fmt(worst.get_d()) + " at " + where;
    return o;
}

Outcome joint_probability() {
    Outcome o{true, ""};
    std::string failing;
    for (const auto& e : exact_tables()) {
        const auto r = worst_joint_ratio(e.graph, e.tables);
        if (r.ratio > 1) {
            o.passed = false;
            failing += " " + e.graph.descriptor() + " ratio " + fraction_string(r.ratio) + " at (" +
                       std::to_string(r.u) + "," + std::to_string(r.v) + ") k=" + std::to_string(r.k) +
                       " codegree " + std::to_string(codegree(e.graph, r.u, r.v)) + ";";
        }
    }
    o.detail = o.passed ? "every pair and k within the bound" : "exceeded on" + failing;
    return o;
}

Outcome codegree_identity() {
    const std::vector<CodegreeCase> cases{{20, 3, 17}, {50, 5, 17}, {100, 10, 16}};
    const auto rows = check_codegree_identity(cases, derive_seed(kSeed, 4));
    Outcome o{rows.size() == 50, ""};
    for (const auto& r : rows)
        if (!r.passed()) {
            o.passed = false;
            o.detail = r.graph + " sum " + std::to_string(r.sum) + " expected " + std::to_string(r.expected);
        }
    if (o.passed) o.detail = std::to_string(rows.size()) + " random regular graphs, sum = nd(d-1) exactly";
    return o;
}

Outcome monte_carlo() {
    ExperimentConfig cfg;
    cfg.graph = family_with_degree(GraphFamily::circulant, 2000, 20, 0);
    cfg.trials = 500;
    cfg.master_seed = derive_seed(kSeed, 5);
    cfg.threads = default_threads();
    const auto r = run_monte_carlo(cfg);
    const double tol = 4.0 * std::sqrt(17.0 * r.expected / 500.0);
    const double limit = 1.1 * r.variance_cap;
    Outcome o{true, ""};
    double worst_dev = 0.0, worst_ci = 0.0;
    for (const auto& s : r.per_k) {
        const double dev = std::abs(s.summary.mean - r.expected);
        const double ci = variance_upper_bound(s.summary.variance, r.trials, 0.99);
        worst_dev = std::max(worst_dev, dev);
        worst_ci = std::max(worst_ci, ci);
        if (!(dev <= tol) || !(ci <= limit)) o.passed = false;
    }
    o.detail = "max |mean-" + fmt(r.expected) + "| = " + fmt(worst_dev) + " (tol " + fmt(tol) +
               "), max Var 99% upper CI = " + fmt(worst_ci) + " (limit " + fmt(limit) + ")";
    return o;
}

Outcome martingale_exactness() {
    const Graph g = build_graph(family_with_degree(GraphFamily::circulant, 200, 10, 0));
    Outcome o{true, ""};
    double worst = 0.0;
    std::uint64_t mismatches = 0;
    for (std::uint32_t k = 0; k <= g.d(); ++k) {
        const auto r = check_martingale_exactness(g, k, 100, derive_seed(kSeed, 600 + k), default_threads());
        worst = std::max(worst, r.max_x0_error);
        mismatches += r.recount_mismatches + r.non_integer;
        if (!r.passed()) o.passed = false;
    }
    o.detail = "100 traces for each k = 0..10: max |X_0 - n/(d+1)| = " + fmt(worst) +
               ", X_n mismatches = " + std::to_string(mismatches);
    return o;
}

Outcome variance_proxy() {
    const Graph g = build_graph(spec(GraphFamily::circulant, {8, 1, 2}));
    const OracleTables* t = nullptr;
    for (const auto& e : exact_tables())
        if (e.graph == g) t = &e.tables;
    const mpq_class var = exact_mean_var(*t, 2).variance;
    const auto r = check_variance_proxy(g, 2, 10000, derive_seed(kSeed, 7), var.get_d(), {}, default_threads());
    return {r.passed, std::to_string(r.traces) + " traces, mean M_n = " + fmt(r.proxy.mean) + " +- " + fmt(r.standard_error) + " (SE), exact Var = " +
                          fraction_string(var) + " = " + fmt(r.target)};
}

Outcome decomposition() {
    const Graph g = build_graph(family_with_degree(GraphFamily::circulant, 100, 10, 0));
    Outcome o{true, ""};
    std::string detail;
    for (const std::uint32_t k : {0u, 5u, 10u}) {
        const auto r = check_decomposition(g, k, 10, derive_seed(kSeed, 800 + k), 1e-6, {}, default_threads());
        if (!r.passed()) o.passed = false;
        detail += " k=" + std::to_string(k) + ": " + std::to_string(r.violations) + "/" + std::to_string(r.steps) +
                  " steps over, worst excess " + fmt(r.worst_excess) + " (without own term: " +
                  std::to_string(r.neighbor_violations) + " over);";
    }
    o.detail = "E[Y_j^2|F] <= 2A1+2A2+1e-6:" + detail;
    return o;
}

Outcome f_inequality() {
    const auto r = check_f_inequality(500);
    const double spot = kl_exponent(0.5, 0.25);
    const bool spot_ok = std::abs(spot - (-0.1308)) <= 1e-4;
    return {r.passed() && spot_ok, "max f = " + fmt(r.max_f) + ", max |f(x)| on diagonal = " +
                                       fmt(r.max_abs_diagonal) + ", c_hat = " + fmt(r.c_hat) +
                                       ", f(0.25 | x=0.5) = " + fmt(spot)};
}

Outcome interval_claims() {
    Outcome o{true, ""};
    for (const double h : {20.0, 30.0}) {
        const auto r = interval_claims_stats(10000, h, 1000, derive_seed(kSeed, 1000 + std::uint64_t(h)));
        if (!r.passed()) o.passed = false;
        for (const auto* c : {&r.deviation, &r.overfill, &r.empty_gap})
            o.detail += " h=" + fmt(h) + " " + c->claim + ": " + fmt(c->frequency) + " <= " + fmt(c->bound) +
                        " + " + fmt(c->margin) + (c->passed ? ";" : " (over);");
    }
    return o;
}

Outcome scaling() {
    const std::vector<std::uint32_t> ns{200, 400, 800, 1600};
    const auto t = scaling_study(GraphFamily::circulant, ns, 20, 100, derive_seed(kSeed, 11), -1, {}, default_threads());
    std::string detail = "max|Y|/log n spread " + fmt(t.increment_ratio_spread) + " (< 2);";
    for (const auto& r : t.rows)
        detail += " n=" + std::to_string(r.n) + ": q(max|Y|)=" + fmt(r.increment_quantile) + " ratio " +
                  fmt(r.increment_ratio) + ", q(M_n)=" + fmt(r.proxy_quantile) + ";";
    return {t.passed(), detail};
}

Outcome determinism() {
    const auto cfg = load_verify_config(std::string(IRSUB_CONFIG_DIR) + "/smoke.json");
    const std::uint64_t seed = cfg.seed.value_or(kSeed);
    const std::string a = run_verify(cfg, seed, 1).dump();
    const std::string b = run_verify(cfg, seed, 4).dump();
    return {a == b, "smoke report with 1 and 4 workers: " + std::to_string(a.size()) + " bytes, " +
                        (a == b ? "identical" : "different")};
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"exact degree law", degree_law},
        {"exact variance bound", variance_bound},
        {"joint probability bound", joint_probability},
        {"codegree identity", codegree_identity},
        {"monte carlo concentration", monte_carlo},
        {"martingale exactness", martingale_exactness},
        {"variance proxy consistency", variance_proxy},
        {"decomposition inequality", decomposition},
        {"f inequality", f_inequality},
        {"interval claims", interval_claims},
        {"increment trend", scaling},
        {"determinism", determinism},
    };
    bool all = true;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("error: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        all = all && o.passed;
        std::printf("%s %zu %s [%.1fs]: %s\n", o.passed ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), secs,
                    o.detail.c_str());
        std::fflush(stdout);
    }
    return all ? 0 : 1;
}
