#include "irsub/verify.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "irsub/rng.hpp"

namespace irsub {

namespace {

std::string at(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }
std::string at(const std::string& path, std::size_t index) { return path + "[" + std::to_string(index) + "]"; }

/// Object node whose keys must all come from `allowed`.
class Fields {
public:
    Fields(const ordered_json& node, std::string path, std::initializer_list<const char*> allowed)
        : node_(node), path_(std::move(path)) {
        if (!node.is_object()) throw ConfigError(path_.empty() ? "<root>" : path_, "expected an object");
        const std::set<std::string> keys(allowed.begin(), allowed.end());
        for (const auto& item : node.items())
            if (!keys.count(item.key())) throw ConfigError(at(path_, item.key()), "unknown key");
    }

    bool has(const std::string& key) const { return node_.contains(key); }
    const ordered_json& get(const std::string& key) const {
        if (!has(key)) throw ConfigError(at(path_, key), "required key is missing");
        return node_.at(key);
    }
    std::string path(const std::string& key) const { return at(path_, key); }

    std::uint64_t u64(const std::string& key, std::uint64_t min = 0) const {
        const auto& v = get(key);
        if (!v.is_number_integer() || (v.is_number_integer() && !v.is_number_unsigned() && v.get<std::int64_t>() < 0))
            throw ConfigError(path(key), "expected a non-negative integer");
        const auto value = v.get<std::uint64_t>();
        if (value < min) throw ConfigError(path(key), "must be at least " + std::to_string(min));
        return value;
    }
    std::uint64_t u64_or(const std::string& key, std::uint64_t fallback, std::uint64_t min = 0) const {
        return has(key) ? u64(key, min) : fallback;
    }
    std::uint32_t u32(const std::string& key, std::uint64_t min = 0) const {
        const auto value = u64(key, min);
        if (value > 0xffffffffULL) throw ConfigError(path(key), "value too large");
        return std::uint32_t(value);
    }
    double number(const std::string& key) const {
        const auto& v = get(key);
        if (!v.is_number()) throw ConfigError(path(key), "expected a number");
        return v.get<double>();
    }
    double positive_or(const std::string& key, double fallback) const {
        if (!has(key)) return fallback;
        const double value = number(key);
        if (!(value > 0.0)) throw ConfigError(path(key), "must be positive");
        return value;
    }
    bool boolean_or(const std::string& key, bool fallback) const {
        if (!has(key)) return fallback;
        const auto& v = get(key);
        if (!v.is_boolean()) throw ConfigError(path(key), "expected true or false");
        return v.get<bool>();
    }
    std::string string(const std::string& key) const {
        const auto& v = get(key);
        if (!v.is_string()) throw ConfigError(path(key), "expected a string");
        return v.get<std::string>();
    }
    std::vector<double> numbers_or(const std::string& key, std::vector<double> fallback) const {
        if (!has(key)) return fallback;
        const auto& v = get(key);
        if (!v.is_array() || v.empty()) throw ConfigError(path(key), "expected a non-empty array of numbers");
        std::vector<double> out;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (!v[i].is_number()) throw ConfigError(at(path(key), i), "expected a number");
            out.push_back(v[i].get<double>());
        }
        return out;
    }
    std::vector<std::uint32_t> counts(const std::string& key) const {
        const auto& v = get(key);
        if (!v.is_array() || v.empty()) throw ConfigError(path(key), "expected a non-empty array of integers");
        std::vector<std::uint32_t> out;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (!v[i].is_number_unsigned() || v[i].get<std::uint64_t>() > 0xffffffffULL)
                throw ConfigError(at(path(key), i), "expected a non-negative integer");
            out.push_back(v[i].get<std::uint32_t>());
        }
        return out;
    }
    /// "all", a single k, or a list of k.
    std::vector<std::uint32_t> degrees(const std::string& key) const {
        if (!has(key)) return {};
        const auto& v = get(key);
        if (v.is_string()) {
            if (v.get<std::string>() != "all") throw ConfigError(path(key), "expected \"all\", an integer or a list");
            return {};
        }
        if (v.is_number_unsigned()) return {v.get<std::uint32_t>()};
        return counts(key);
    }

private:
    const ordered_json& node_;
    std::string path_;
};

std::vector<std::int64_t> as_params(std::initializer_list<std::uint64_t> values) {
    return {values.begin(), values.end()};
}

QuadratureSpec parse_quadrature(const ordered_json& node, const std::string& path) {
    const Fields f(node, path, {"nodes", "rel_tol", "abs_tol", "strict", "split_all_kinks"});
    QuadratureSpec q;
    q.nodes = f.u64_or("nodes", q.nodes, 1);
    q.rel_tol = f.positive_or("rel_tol", q.rel_tol);
    q.abs_tol = f.positive_or("abs_tol", q.abs_tol);
    q.strict = f.boolean_or("strict", q.strict);
    q.split_all_kinks = f.boolean_or("split_all_kinks", q.split_all_kinks);
    return q;
}

template <typename Entry, typename Fill>
std::vector<Entry> parse_list(const ordered_json& node, const std::string& path, Fill fill) {
    if (!node.is_array()) throw ConfigError(path, "expected an array");
    std::vector<Entry> out;
    for (std::size_t i = 0; i < node.size(); ++i) out.push_back(fill(node[i], at(path, i)));
    return out;
}

GraphEntry graph_entry(const Fields& f) {
    GraphEntry e;
    e.spec = parse_graph_spec(f.get("graph"), f.path("graph"));
    e.ks = f.degrees("k");
    return e;
}

ScalingEntry parse_scaling(const ordered_json& node, const std::string& path) {
    const Fields f(node, path, {"family", "n", "d", "trials", "k"});
    ScalingEntry e;
    try {
        e.family = parse_family(f.string("family"));
    } catch (const InvalidArgument& ex) {
        throw ConfigError(f.path("family"), ex.what());
    }
    e.n_list = f.counts("n");
    if (e.n_list.size() < 3) throw ConfigError(f.path("n"), "needs at least 3 values");
    if (std::adjacent_find(e.n_list.begin(), e.n_list.end(), std::greater_equal<>()) != e.n_list.end())
        throw ConfigError(f.path("n"), "values must be strictly increasing");
    e.d = f.u32("d", 1);
    e.trials = f.u64("trials", 1);
    if (f.has("k")) e.k = int(f.u32("k"));
    return e;
}

}  // namespace

GraphFamilySpec parse_graph_spec(const ordered_json& node, const std::string& path) {
    if (!node.is_object()) throw ConfigError(path, "expected an object");
    if (!node.contains("family") || !node["family"].is_string())
        throw ConfigError(at(path, "family"), "required string is missing");
    GraphFamilySpec spec;
    try {
        spec.family = parse_family(node["family"].get<std::string>());
    } catch (const InvalidArgument& ex) {
        throw ConfigError(at(path, "family"), ex.what());
    }
    switch (spec.family) {
        case GraphFamily::complete: {
            const Fields f(node, path, {"family", "n"});
            spec.parameters = as_params({f.u64("n", 1)});
            break;
        }
        case GraphFamily::circulant: {
            const Fields f(node, path, {"family", "n", "offsets"});
            spec.parameters = as_params({f.u64("n", 2)});
            for (const auto o : f.counts("offsets")) spec.parameters.push_back(o);
            break;
        }
        case GraphFamily::complete_bipartite: {
            const Fields f(node, path, {"family", "side"});
            spec.parameters = as_params({f.u64("side", 1)});
            break;
        }
        case GraphFamily::hypercube: {
            const Fields f(node, path, {"family", "dim"});
            spec.parameters = as_params({f.u64("dim", 1)});
            break;
        }
        case GraphFamily::random_regular: {
            const Fields f(node, path, {"family", "n", "d", "seed", "strategy"});
            spec.parameters = as_params({f.u64("n", 1), f.u64("d")});
            spec.seed = f.u64("seed");
            if (f.has("strategy")) {
                const auto s = f.string("strategy");
                if (s == "auto")
                    spec.strategy = RegularStrategy::automatic;
                else if (s == "pairing")
                    spec.strategy = RegularStrategy::pairing;
                else if (s == "steger_wormald" || s == "steger-wormald")
                    spec.strategy = RegularStrategy::steger_wormald;
                else
                    throw ConfigError(f.path("strategy"), "expected auto, pairing or steger_wormald");
            }
            break;
        }
        case GraphFamily::disjoint_cliques: {
            const Fields f(node, path, {"family", "count", "size"});
            spec.parameters = as_params({f.u64("count", 1), f.u64("size", 1)});
            break;
        }
        case GraphFamily::from_file: {
            const Fields f(node, path, {"family", "path"});
            spec.path = f.string("path");
            break;
        }
    }
    return spec;
}

VerifyConfig parse_verify_config(const ordered_json& doc) {
    const Fields root(doc, "", {"seed", "oracle_cap", "quadrature", "report", "tables_dir", "checks"});
    VerifyConfig cfg;
    cfg.source = doc;
    if (root.has("seed")) cfg.seed = root.u64("seed");
    cfg.oracle_cap = root.has("oracle_cap") ? root.u32("oracle_cap", 1) : cfg.oracle_cap;
    if (cfg.oracle_cap > kMaxOracleCap)
        throw ConfigError("oracle_cap", "must be at most " + std::to_string(kMaxOracleCap));
    if (root.has("quadrature")) cfg.quadrature = parse_quadrature(root.get("quadrature"), "quadrature");
    if (root.has("report")) cfg.report_path = root.string("report");
    if (root.has("tables_dir")) cfg.tables_dir = root.string("tables_dir");

    const Fields checks(root.get("checks"), "checks",
                        {"exact", "monte_carlo", "variance", "concentration", "martingale", "variance_proxy",
                         "decomposition", "codegree", "f_inequality", "stirling", "interval_claims", "scaling"});
    if (checks.has("exact"))
        cfg.exact = parse_list<ExactEntry>(checks.get("exact"), "checks.exact", [](const auto& n, const auto& p) {
            const Fields f(n, p, {"graph", "k", "z"});
            ExactEntry e;
            static_cast<GraphEntry&>(e) = graph_entry(f);
            e.z_grid = f.numbers_or("z", {0.0, 0.5, 1.0, 1.5, 2.0, 3.0, 4.0});
            return e;
        });
    if (checks.has("monte_carlo"))
        cfg.monte_carlo =
            parse_list<MonteCarloEntry>(checks.get("monte_carlo"), "checks.monte_carlo", [](const auto& n, const auto& p) {
                const Fields f(n, p, {"graph", "k", "trials", "kappa_constant", "sigmas"});
                MonteCarloEntry e;
                static_cast<GraphEntry&>(e) = graph_entry(f);
                e.trials = f.u64("trials", 1);
                e.kappa_constant = f.positive_or("kappa_constant", 1.0);
                e.sigmas = f.positive_or("sigmas", 4.0);
                return e;
            });
    if (checks.has("variance"))
        cfg.variance = parse_list<VarianceEntry>(checks.get("variance"), "checks.variance", [](const auto& n, const auto& p) {
            const Fields f(n, p, {"graph", "k", "trials"});
            VarianceEntry e;
            static_cast<GraphEntry&>(e) = graph_entry(f);
            if (f.has("trials")) e.trials = f.u64("trials", 100);
            return e;
        });
    if (checks.has("concentration"))
        cfg.concentration = parse_list<ConcentrationEntry>(
            checks.get("concentration"), "checks.concentration", [](const auto& n, const auto& p) {
                const Fields f(n, p, {"graph", "k", "trials", "pilot_traces", "z"});
                ConcentrationEntry e;
                static_cast<GraphEntry&>(e) = graph_entry(f);
                if (e.ks.size() != 1) throw ConfigError(f.path("k"), "expected a single degree");
                e.trials = f.u64("trials", 1000);
                e.pilot_traces = f.u64_or("pilot_traces", e.pilot_traces, 1);
                e.z_grid = f.numbers_or("z", {});
                if (e.z_grid.empty()) throw ConfigError(f.path("z"), "required key is missing");
                return e;
            });
    const auto traces = [](std::uint64_t min, bool tolerance) {
        return [min, tolerance](const ordered_json& n, const std::string& p) {
            const Fields f = tolerance ? Fields(n, p, {"graph", "k", "traces", "tolerance"})
                                       : Fields(n, p, {"graph", "k", "traces"});
            TraceEntry e;
            static_cast<GraphEntry&>(e) = graph_entry(f);
            if (!f.has("k")) throw ConfigError(f.path("k"), "required key is missing");
            e.traces = f.u64("traces", min);
            if (tolerance) e.tolerance = f.positive_or("tolerance", e.tolerance);
            return e;
        };
    };
    if (checks.has("martingale"))
        cfg.martingale = parse_list<TraceEntry>(checks.get("martingale"), "checks.martingale", traces(1, false));
    if (checks.has("variance_proxy"))
        cfg.variance_proxy =
            parse_list<TraceEntry>(checks.get("variance_proxy"), "checks.variance_proxy", traces(2, false));
    if (checks.has("decomposition"))
        cfg.decomposition =
            parse_list<TraceEntry>(checks.get("decomposition"), "checks.decomposition", traces(1, true));
    if (checks.has("codegree"))
        cfg.codegree = parse_list<CodegreeCase>(checks.get("codegree"), "checks.codegree", [](const auto& n, const auto& p) {
            const Fields f(n, p, {"n", "d", "graphs"});
            return CodegreeCase{f.u32("n", 1), f.u32("d"), f.u32("graphs", 1)};
        });
    if (checks.has("f_inequality")) {
        const Fields f(checks.get("f_inequality"), "checks.f_inequality", {"resolution"});
        cfg.f_inequality = f.u64("resolution", 100);
    }
    if (checks.has("stirling")) {
        const Fields f(checks.get("stirling"), "checks.stirling", {"samples"});
        cfg.stirling = f.u64("samples", 1000);
    }
    if (checks.has("interval_claims"))
        cfg.interval_claims = parse_list<IntervalEntry>(
            checks.get("interval_claims"), "checks.interval_claims", [](const auto& n, const auto& p) {
                const Fields f(n, p, {"m", "h", "reps", "kappa"});
                IntervalEntry e;
                e.m = f.u64("m", 100);
                e.h = f.number("h");
                if (!(e.h > 1.0) || e.h > double(e.m)) throw ConfigError(f.path("h"), "must satisfy 1 < h <= m");
                e.reps = f.u64("reps", 100);
                e.kappa = f.positive_or("kappa", 0.0);
                return e;
            });
    if (checks.has("scaling")) cfg.scaling = parse_scaling(checks.get("scaling"), "checks.scaling");
    return cfg;
}

VerifyConfig load_verify_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open config " + path);
    ordered_json doc;
    try {
        doc = ordered_json::parse(in);
    } catch (const nlohmann::json::parse_error& ex) {
        throw ConfigError("<root>", std::string("not valid JSON: ") + ex.what());
    }
    return parse_verify_config(doc);
}

bool BoundReport::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

std::string BoundReport::dump() const {
    ordered_json out = body;
    auto& list = out["checks"] = ordered_json::array();
    for (const auto& c : checks)
        list.push_back({{"name", c.name}, {"passed", c.passed}, {"observed", c.observed}, {"limit", c.limit},
                        {"detail", c.detail}});
    out["all_passed"] = passed();
    return out.dump(2) + "\n";
}

namespace {

ordered_json summary_json(const SampleSummary& s) {
    return {{"count", s.count}, {"mean", s.mean}, {"variance", s.variance}, {"min", s.min}, {"max", s.max}};
}

struct Runner {
    const VerifyConfig& cfg;
    std::uint64_t seed;
    unsigned threads;
    BoundReport report;

    void check(std::string name, bool passed, double observed, double limit, std::string detail = {}) {
        report.checks.push_back({std::move(name), passed, observed, limit, std::move(detail)});
    }
    std::uint64_t seed_for(std::uint64_t section, std::uint64_t index) const {
        return derive_seed(seed, section * 1000 + index);
    }

    ordered_json exact(const ExactEntry& e) {
        const Graph g = build_graph(e.spec);
        const auto tables = enumerate_order_types(g, {cfg.oracle_cap, threads});
        const std::uint32_t d = g.d();
        const mpq_class uniform(1, d + 1);
        std::vector<std::uint32_t> ks = e.ks;
        if (ks.empty())
            for (std::uint32_t k = 0; k <= d; ++k) ks.push_back(k);

        ordered_json out{{"graph", g.descriptor()}, {"n", g.n()}, {"d", d}, {"order_types", tables.total}};
        bool pmf_ok = true;
        for (Vertex v = 0; v < g.n(); ++v) {
            const auto pmf = exact_degree_pmf(tables, v);
            for (const auto k : ks) pmf_ok = pmf_ok && pmf.at(k).value() == uniform;
            if (v == 0) {
                auto& row = out["pmf_vertex0"] = ordered_json::array();
                for (const auto& p : pmf) row.push_back(p.str());
            }
        }
        check("exact degree law " + g.descriptor(), pmf_ok, 0.0, 0.0, "every P[deg=k] equals 1/(d+1)");

        const mpq_class cap = variance_cap(g.n(), d);
        bool var_ok = true, routes_ok = true, mean_ok = true;
        double worst_var = 0.0;
        std::vector<double> z_grid = e.z_grid;
        bool cheb_ok = true;
        auto& per_k = out["per_k"] = ordered_json::array();
        for (const auto k : ks) {
            const auto m = exact_mean_var(tables, k);
            var_ok = var_ok && m.variance <= cap;
            routes_ok = routes_ok && m.variance == variance_from_joints(tables, k);
            mpq_class expected_mean(g.n(), d + 1);
            expected_mean.canonicalize();
            mean_ok = mean_ok && m.mean == expected_mean;
            worst_var = std::max(worst_var, m.variance.get_d());
            ordered_json tails = ordered_json::array();
            for (const auto& r : exact_chebyshev_check(tables, k, z_grid)) {
                cheb_ok = cheb_ok && r.passed;
                tails.push_back({{"z", r.z}, {"tail", fraction_string(r.tail)}, {"chebyshev", fraction_string(r.chebyshev)},
                                 {"passed", r.passed}});
            }
            per_k.push_back({{"k", k},
                             {"mean", fraction_string(m.mean)},
                             {"variance", fraction_string(m.variance)},
                             {"variance_decimal", m.variance.get_d()},
                             {"tails", std::move(tails)}});
        }
        out["variance_cap"] = fraction_string(cap);
        check("exact mean " + g.descriptor(), mean_ok, 0.0, 0.0, "E[m(H,k)] equals n/(d+1)");
        check("exact variance bound " + g.descriptor(), var_ok, worst_var, cap.get_d(), "Var(X) <= 17n/(d+1)");
        check("variance routes agree " + g.descriptor(), routes_ok, 0.0, 0.0,
              "distribution and pair expansion give the same variance");
        check("exact chebyshev " + g.descriptor(), cheb_ok, 0.0, 0.0, "P[|X-EX|>=z] <= Var(X)/z^2");

        const auto worst = worst_joint_ratio(g, tables);
        out["worst_joint_ratio"] = {{"ratio", fraction_string(worst.ratio)}, {"decimal", worst.ratio.get_d()},
                                    {"u", worst.u}, {"v", worst.v}, {"k", worst.k}};
        check("joint bound " + g.descriptor(), worst.ratio <= 1, worst.ratio.get_d(), 1.0,
              "E[I_u I_v] <= (1+16 codeg/(d+1))/(d+1)^2 for every pair and k");
        return out;
    }

    ordered_json monte_carlo(const MonteCarloEntry& e, std::uint64_t s) {
        ExperimentConfig ec;
        ec.graph = e.spec;
        ec.k_set = e.ks;
        ec.trials = e.trials;
        ec.master_seed = s;
        ec.kappa_constant = e.kappa_constant;
        ec.threads = threads;
        const auto r = run_monte_carlo(ec);
        ordered_json out{{"graph", r.graph}, {"trials", r.trials}, {"seed", s}, {"expected", r.expected},
                         {"variance_cap", r.variance_cap}, {"kappa_constant", e.kappa_constant}, {"kappa", r.kappa}};
        auto& per_k = out["per_k"] = ordered_json::array();
        for (const auto& k : r.per_k)
            per_k.push_back({{"k", k.k}, {"variance_defined", k.variance_defined}, {"k_plus", k.k_plus},
                             {"summary", summary_json(k.summary)}});
        out["max_count"] = summary_json(r.max_count);
        double worst = 0.0, limit = 0.0;
        bool ok = true;
        for (const auto& c : check_means(r, e.sigmas)) {
            worst = std::max(worst, c.observed);
            limit = c.limit;
            ok = ok && c.passed;
        }
        check("monte carlo means " + r.graph, ok, worst, limit,
              "|mean - n/(d+1)| <= " + std::to_string(e.sigmas) + " sqrt(17 (n/(d+1)) / trials)");
        return out;
    }

    ordered_json variance(const VarianceEntry& e, std::uint64_t s, const std::string& path) {
        const Graph g = build_graph(e.spec);
        if (g.n() > cfg.oracle_cap && e.trials == 0)
            throw ConfigError(at(path, "trials"), "required in sampling mode (graph exceeds the oracle cap)");
        VarianceOptions opts;
        opts.oracle_cap = cfg.oracle_cap;
        opts.threads = threads;
        const auto rows = verify_variance_bound(g, e.ks, e.trials, s, opts);
        ordered_json out{{"graph", g.descriptor()}, {"mode", rows.front().mode == CheckMode::exact ? "exact" : "sampling"},
                         {"seed", s}};
        auto& list = out["per_k"] = ordered_json::array();
        bool ok = true;
        double worst = -INFINITY, limit = 0.0;
        for (const auto& r : rows) {
            ok = ok && r.passed;
            if (r.upper_bound - r.limit > worst - limit) {
                worst = r.upper_bound;
                limit = r.limit;
            }
            ordered_json row{{"k", r.k}, {"variance", r.variance}, {"upper_bound", r.upper_bound}, {"limit", r.limit},
                             {"passed", r.passed}};
            if (r.mode == CheckMode::exact) row["variance_exact"] = r.variance_exact;
            list.push_back(std::move(row));
        }
        check("variance bound " + g.descriptor(), ok, worst, limit,
              rows.front().mode == CheckMode::exact ? "exact Var(X) <= 17n/(d+1)"
                                                    : "99% chi-square upper bound <= 1.1 * 17n/(d+1)");
        return out;
    }

    ordered_json concentration(const ConcentrationEntry& e, std::uint64_t s, std::size_t index) {
        const Graph g = build_graph(e.spec);
        ConcentrationOptions opts;
        opts.pilot_traces = e.pilot_traces;
        opts.quadrature = cfg.quadrature;
        opts.threads = threads;
        const auto r = concentration_report(g, e.ks.front(), e.trials, s, e.z_grid, opts);
        ordered_json out{{"graph", r.graph}, {"k", r.k}, {"trials", r.trials}, {"seed", s},
                         {"expected", r.expected}, {"counts", summary_json(r.counts)},
                         {"pilot_traces", r.pilot_traces}, {"a_star", r.a_star}, {"l_star", r.l_star},
                         {"increment_exceedance", r.increment_exceedance}, {"proxy_exceedance", r.proxy_exceedance},
                         {"monotone", r.monotone}};
        auto& rows = out["tails"] = ordered_json::array();
        for (const auto& t : r.rows)
            rows.push_back({{"z", t.z}, {"empirical", t.empirical}, {"chebyshev", t.chebyshev},
                            {"bernstein", t.bernstein}, {"chebyshev_ok", t.chebyshev_ok},
                            {"bernstein_ok", t.bernstein_ok}});
        check("concentration " + r.graph + " k=" + std::to_string(r.k), r.passed(), 0.0, 0.0,
              "empirical tail <= Chebyshev and Bernstein bounds + 3 SE, tails monotone");
        std::ostringstream csv;
        write_tail_csv(r, csv);
        report.tables.emplace_back("tail_" + std::to_string(index) + ".csv", csv.str());
        return out;
    }

    ordered_json martingale(const TraceEntry& e, std::uint64_t s) {
        const Graph g = build_graph(e.spec);
        ordered_json out{{"graph", g.descriptor()}, {"traces", e.traces}, {"seed", s}};
        auto& list = out["per_k"] = ordered_json::array();
        for (const auto k : e.ks) {
            const auto r = check_martingale_exactness(g, k, e.traces, s, threads);
            list.push_back({{"k", k}, {"max_x0_error", r.max_x0_error}, {"recount_mismatches", r.recount_mismatches},
                            {"non_integer", r.non_integer}});
            check("martingale endpoints " + g.descriptor() + " k=" + std::to_string(k), r.passed(), r.max_x0_error,
                  1e-9, "X_n integer and equal to the recount, |X_0 - n/(d+1)| <= 1e-9");
        }
        return out;
    }

    ordered_json variance_proxy(const TraceEntry& e, std::uint64_t s) {
        const Graph g = build_graph(e.spec);
        const auto tables = enumerate_order_types(g, {cfg.oracle_cap, threads});
        ordered_json out{{"graph", g.descriptor()}, {"traces", e.traces}, {"seed", s}};
        auto& list = out["per_k"] = ordered_json::array();
        for (const auto k : e.ks) {
            const auto exact = exact_mean_var(tables, k).variance;
            const auto r = check_variance_proxy(g, k, e.traces, s, exact.get_d(), cfg.quadrature, threads);
            list.push_back({{"k", k}, {"exact_variance", fraction_string(exact)}, {"proxy", summary_json(r.proxy)},
                            {"standard_error", r.standard_error}});
            check("variance proxy " + g.descriptor() + " k=" + std::to_string(k), r.passed,
                  std::abs(r.proxy.mean - r.target), kSigmaMargin * r.standard_error, "|mean M_n - Var(X)| <= 3 SE");
        }
        return out;
    }

    ordered_json decomposition(const TraceEntry& e, std::uint64_t s) {
        const Graph g = build_graph(e.spec);
        ordered_json out{{"graph", g.descriptor()}, {"traces", e.traces}, {"seed", s}, {"tolerance", e.tolerance}};
        auto& list = out["per_k"] = ordered_json::array();
        for (const auto k : e.ks) {
            const auto r = check_decomposition(g, k, e.traces, s, e.tolerance, cfg.quadrature, threads);
            list.push_back({{"k", k},
                            {"steps", r.steps},
                            {"worst_excess", r.worst_excess},
                            {"violations", r.violations},
                            {"neighbor_only_worst_excess", r.worst_neighbor_excess},
                            {"neighbor_only_violations", r.neighbor_violations},
                            {"max_quadrature_error", r.max_quadrature_error}});
            check("decomposition " + g.descriptor() + " k=" + std::to_string(k), r.passed(), r.worst_excess,
                  e.tolerance, "E[Y_j^2|F_{j-1}] <= 2 A_1 + 2 A_2 + tol at every step");
        }
        return out;
    }

    ordered_json codegree() {
        const auto rows = check_codegree_identity(cfg.codegree, seed_for(8, 0));
        ordered_json out = ordered_json::array();
        bool ok = true;
        for (const auto& r : rows) {
            ok = ok && r.passed();
            out.push_back({{"graph", r.graph}, {"sum", r.sum}, {"expected", r.expected}});
        }
        check("codegree identity", ok, double(rows.size()), 0.0, "sum of codegrees equals n d (d-1)");
        return out;
    }

    ordered_json f_inequality(std::size_t resolution) {
        const auto r = check_f_inequality(resolution);
        const double spot = kl_exponent(0.5, 0.25);
        check("f inequality", r.passed(), r.c_hat, 0.0, "f <= 0 off the diagonal, f(x) = 0, c_hat > 0");
        return {{"resolution", r.resolution}, {"max_f", r.max_f}, {"max_abs_diagonal", r.max_abs_diagonal},
                {"c_hat", r.c_hat}, {"c_hat_x", r.c_hat_x}, {"c_hat_alpha", r.c_hat_alpha},
                {"f_half_quarter", spot}};
    }

    ordered_json stirling(std::uint64_t samples) {
        const auto s = seed_for(10, 0);
        const auto r = check_stirling_delta(samples, s);
        check("stirling bound", r.passed(), r.max_ratio, 0.0, "max |delta| / bound finite, |delta| <= 1");
        return {{"samples", r.samples}, {"seed", s}, {"max_ratio", r.max_ratio}, {"max_step", r.max_step},
                {"worst", {{"x", r.worst_x}, {"t", r.worst_t}, {"h", r.worst_h}}}};
    }

    ordered_json interval(const IntervalEntry& e, std::uint64_t s) {
        const auto r = interval_claims_stats(e.m, e.h, e.reps, s, e.kappa);
        ordered_json out{{"m", r.m}, {"h", r.h}, {"reps", r.reps}, {"kappa", r.kappa}, {"seed", s}};
        for (const auto* c : {&r.deviation, &r.overfill, &r.empty_gap}) {
            out["claims"].push_back({{"claim", c->claim}, {"hits", c->hits}, {"frequency", c->frequency},
                                     {"bound", c->bound}, {"margin", c->margin}, {"passed", c->passed}});
            check("interval " + c->claim + " m=" + std::to_string(r.m) + " h=" + std::to_string(int(r.h)), c->passed,
                  c->frequency, c->bound + c->margin);
        }
        return out;
    }

    ordered_json scaling(const ScalingEntry& e) {
        const auto s = seed_for(12, 0);
        const auto t = scaling_study(e.family, e.n_list, e.d, e.trials, s, e.k, cfg.quadrature, threads);
        ordered_json out{{"family", t.family}, {"seed", s}, {"quantile", t.quantile_level},
                         {"increment_ratio_spread", t.increment_ratio_spread}};
        auto& rows = out["rows"] = ordered_json::array();
        for (const auto& r : t.rows)
            rows.push_back({{"n", r.n}, {"d", r.d}, {"k", r.k}, {"trials", r.trials},
                            {"max_abs_Y_quantile", r.increment_quantile}, {"M_n_quantile", r.proxy_quantile},
                            {"max_abs_Y_over_log_n", r.increment_ratio},
                            {"M_n_over_log_n_n_over_d", r.proxy_ratio},
                            {"max_quadrature_error", r.max_quadrature_error}});
        check("scaling trend max|Y|/log n", t.passed(), t.increment_ratio_spread, 2.0,
              "spread of the 99.9% quantile ratio across n below 2; M_n reported only");
        std::ostringstream csv;
        write_scaling_csv(t, csv);
        report.tables.emplace_back("scaling.csv", csv.str());
        return out;
    }

    void run() {
        ordered_json& body = report.body;
        body["tool"] = "irsub";
        body["seed"] = seed;
        body["oracle_cap"] = cfg.oracle_cap;
        body["quadrature"] = {{"nodes", cfg.quadrature.nodes}, {"rel_tol", cfg.quadrature.rel_tol},
                              {"abs_tol", cfg.quadrature.abs_tol}, {"strict", cfg.quadrature.strict},
                              {"split_all_kinks", cfg.quadrature.split_all_kinks}};
        ordered_json& sections = body["sections"] = ordered_json::object();
        for (std::size_t i = 0; i < cfg.exact.size(); ++i) sections["exact"].push_back(exact(cfg.exact[i]));
        for (std::size_t i = 0; i < cfg.monte_carlo.size(); ++i)
            sections["monte_carlo"].push_back(monte_carlo(cfg.monte_carlo[i], seed_for(2, i)));
        for (std::size_t i = 0; i < cfg.variance.size(); ++i)
            sections["variance"].push_back(variance(cfg.variance[i], seed_for(3, i), at("checks.variance", i)));
        for (std::size_t i = 0; i < cfg.concentration.size(); ++i)
            sections["concentration"].push_back(concentration(cfg.concentration[i], seed_for(4, i), i));
        for (std::size_t i = 0; i < cfg.martingale.size(); ++i)
            sections["martingale"].push_back(martingale(cfg.martingale[i], seed_for(5, i)));
        for (std::size_t i = 0; i < cfg.variance_proxy.size(); ++i)
            sections["variance_proxy"].push_back(variance_proxy(cfg.variance_proxy[i], seed_for(6, i)));
        for (std::size_t i = 0; i < cfg.decomposition.size(); ++i)
            sections["decomposition"].push_back(decomposition(cfg.decomposition[i], seed_for(7, i)));
        if (!cfg.codegree.empty()) sections["codegree"] = codegree();
        if (cfg.f_inequality) sections["f_inequality"] = f_inequality(*cfg.f_inequality);
        if (cfg.stirling) sections["stirling"] = stirling(*cfg.stirling);
        for (std::size_t i = 0; i < cfg.interval_claims.size(); ++i)
            sections["interval_claims"].push_back(interval(cfg.interval_claims[i], seed_for(11, i)));
        if (cfg.scaling) sections["scaling"] = scaling(*cfg.scaling);
    }
};

}  // namespace

BoundReport run_verify(const VerifyConfig& config, std::uint64_t seed, unsigned threads) {
    Runner runner{config, seed, threads == 0 ? 1u : threads, {}};
    runner.run();
    return std::move(runner.report);
}

}  // namespace irsub
