// irsub: command-line front end for the irregular random subgraph lab.

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>
#include <openssl/evp.h>

#include "irsub/analysis.hpp"
#include "irsub/error.hpp"
#include "irsub/exact_oracle.hpp"
#include "irsub/graph.hpp"
#include "irsub/martingale.hpp"
#include "irsub/parallel.hpp"
#include "irsub/sampler.hpp"
#include "irsub/verify.hpp"

#ifndef IRSUB_VERSION
#define IRSUB_VERSION "0.0.0"
#endif

namespace fs = std::filesystem;
using irsub::ordered_json;

namespace {

enum Exit : int { kPass = 0, kFail = 1, kUsage = 2, kRuntime = 3 };

struct UsageError : irsub::Error {
    using Error::Error;
};

std::string sha256_hex(const std::string& data) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int length = 0;
    if (EVP_Digest(data.data(), data.size(), digest, &length, EVP_sha256(), nullptr) != 1)
        throw irsub::Error("SHA-256 failed");
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (unsigned i = 0; i < length; ++i) {
        out += hex[digest[i] >> 4];
        out += hex[digest[i] & 15];
    }
    return out;
}

std::string utc_now() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

/// Write-to-temp then rename, so readers never see a partial file.
void write_atomic(const fs::path& path, const std::string& content) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw irsub::Error("cannot write " + tmp.string());
        out << content;
        if (!out.flush()) throw irsub::Error("write failed: " + tmp.string());
    }
    fs::rename(tmp, path);
}

std::uint64_t entropy_seed() {
    std::random_device rd;
    return (std::uint64_t(rd()) << 32) ^ rd();
}

/// Shared state of one invocation: resolved arguments for the manifest and
/// the outputs written so far.
struct Run {
    std::string command;
    std::vector<std::string> arguments;  // replayable argv, seed resolved
    std::optional<std::uint64_t> seed;
    ordered_json graph;
    ordered_json document;  // verify: the config file as read
    ordered_json outputs = ordered_json::array();
    std::string started = utc_now();

    void output(const fs::path& path, const std::string& content) {
        write_atomic(path, content);
        outputs.push_back({{"path", path.string()}, {"sha256", sha256_hex(content)}});
    }
    void record_graph(const irsub::Graph& g) {
        graph = {{"descriptor", g.descriptor()}, {"n", g.n()}, {"d", g.d()},
                 {"sha256", sha256_hex(irsub::edge_list_text(g))}};
    }
    void manifest(const fs::path& path) const {
        ordered_json m;
        m["tool"] = "irsub";
        m["version"] = IRSUB_VERSION;
        m["config"] = {{"command", command}, {"arguments", arguments}};
        if (!document.is_null()) m["config"]["document"] = document;
        if (seed) m["master_seed"] = *seed;
        if (!graph.is_null()) m["graph"] = graph;
        m["started"] = started;
        m["finished"] = utc_now();
        m["outputs"] = outputs;
        write_atomic(path, m.dump(2) + "\n");
    }
};

fs::path manifest_path(const fs::path& output) { return output.string() + ".manifest.json"; }

std::uint64_t resolve_seed(std::optional<std::uint64_t>& seed, Run& run) {
    if (!seed) {
        seed = entropy_seed();
        std::cerr << "seed: " << *seed << " (drawn from system entropy)\n";
    } else {
        std::cerr << "seed: " << *seed << "\n";
    }
    run.seed = seed;
    return *seed;
}

// ---- generate ----------------------------------------------------------

struct GenerateArgs {
    std::string family;
    std::optional<std::int64_t> n, d, side, dim, count, size;
    std::vector<std::int64_t> offsets;
    std::optional<std::uint64_t> seed;
    std::string strategy = "auto";
    std::string out;
};

int cmd_generate(GenerateArgs a, Run& run) {
    irsub::GraphFamilySpec spec;
    spec.family = irsub::parse_family(a.family);
    const auto need = [](const std::optional<std::int64_t>& v, const char* flag) {
        if (!v) throw UsageError(std::string("missing ") + flag);
        return *v;
    };
    run.arguments = {"generate", "--family", irsub::family_name(spec.family)};
    const auto arg = [&](const char* flag, std::int64_t v) {
        run.arguments.push_back(flag);
        run.arguments.push_back(std::to_string(v));
    };
    switch (spec.family) {
        case irsub::GraphFamily::complete:
            spec.parameters = {need(a.n, "--n")};
            arg("--n", *a.n);
            break;
        case irsub::GraphFamily::circulant: {
            if (a.offsets.empty()) throw UsageError("missing --offsets");
            spec.parameters = {need(a.n, "--n")};
            spec.parameters.insert(spec.parameters.end(), a.offsets.begin(), a.offsets.end());
            arg("--n", *a.n);
            std::string list;
            for (const auto o : a.offsets) list += (list.empty() ? "" : ",") + std::to_string(o);
            run.arguments.insert(run.arguments.end(), {"--offsets", list});
            break;
        }
        case irsub::GraphFamily::complete_bipartite:
            spec.parameters = {need(a.side, "--side")};
            arg("--side", *a.side);
            break;
        case irsub::GraphFamily::hypercube:
            spec.parameters = {need(a.dim, "--dim")};
            arg("--dim", *a.dim);
            break;
        case irsub::GraphFamily::random_regular: {
            spec.parameters = {need(a.n, "--n"), need(a.d, "--d")};
            spec.seed = resolve_seed(a.seed, run);
            if (a.strategy == "pairing")
                spec.strategy = irsub::RegularStrategy::pairing;
            else if (a.strategy == "steger-wormald" || a.strategy == "steger_wormald")
                spec.strategy = irsub::RegularStrategy::steger_wormald;
            else if (a.strategy != "auto")
                throw UsageError("unknown --strategy " + a.strategy);
            arg("--n", *a.n);
            arg("--d", *a.d);
            run.arguments.insert(run.arguments.end(),
                                 {"--seed", std::to_string(*a.seed), "--strategy", a.strategy});
            break;
        }
        case irsub::GraphFamily::disjoint_cliques:
            spec.parameters = {need(a.count, "--count"), need(a.size, "--size")};
            arg("--count", *a.count);
            arg("--size", *a.size);
            break;
        case irsub::GraphFamily::from_file:
            throw UsageError("generate cannot build from_file graphs");
    }
    run.arguments.insert(run.arguments.end(), {"--out", a.out});
    const auto g = irsub::build_graph(spec);
    run.record_graph(g);
    run.output(a.out, irsub::edge_list_text(g));
    run.manifest(manifest_path(a.out));
    std::cout << g.descriptor() << ": " << g.n() << " vertices, degree " << g.d() << ", " << g.edge_count()
              << " edges -> " << a.out << "\n";
    return kPass;
}

// ---- sample ------------------------------------------------------------

struct SampleArgs {
    std::string graph;
    std::optional<std::uint32_t> k;
    std::uint64_t trials = 1;
    std::optional<std::uint64_t> seed;
    std::string out;
};

int cmd_sample(SampleArgs a, unsigned threads, Run& run) {
    if (a.trials == 0) throw UsageError("--trials must be at least 1");
    const auto g = irsub::load_graph(a.graph);
    if (a.k && *a.k > g.d()) throw UsageError("--k exceeds the degree d=" + std::to_string(g.d()));
    run.record_graph(g);
    const auto seed = resolve_seed(a.seed, run);
    run.arguments = {"sample", "--graph", a.graph, "--trials", std::to_string(a.trials), "--seed",
                     std::to_string(seed), "--out", a.out};
    if (a.k) run.arguments.insert(run.arguments.end(), {"--k", std::to_string(*a.k)});
    const auto table = irsub::sample_count_table(g, a.trials, seed, threads);
    std::string text;
    for (std::uint64_t i = 0; i < a.trials; ++i) {
        const auto row = table.begin() + i * (g.d() + 1);
        const std::vector<std::uint32_t> counts(row, row + g.d() + 1);
        ordered_json rec{{"master_seed", seed}, {"trial", i}, {"counts", counts},
                         {"max_count", *std::max_element(counts.begin(), counts.end())}};
        if (a.k) {
            rec["k"] = *a.k;
            rec["count"] = counts[*a.k];
        }
        text += rec.dump() + "\n";
    }
    run.output(a.out, text);
    run.manifest(manifest_path(a.out));
    std::cerr << a.trials << " trials -> " << a.out << "\n";
    return kPass;
}

// ---- oracle ------------------------------------------------------------

struct OracleArgs {
    std::string graph;
    std::string query = "pmf";
    std::optional<std::uint32_t> k;
    std::uint32_t vertex = 0;
    std::uint32_t u = 0, v = 1;
    std::uint32_t cap = 8;
    std::string out;
};

int cmd_oracle(const OracleArgs& a, unsigned threads, Run& run) {
    const auto g = irsub::load_graph(a.graph);
    run.record_graph(g);
    run.arguments = {"oracle", "--graph", a.graph, "--query", a.query, "--cap", std::to_string(a.cap)};
    if (a.cap > irsub::kMaxOracleCap)
        throw UsageError("--cap is limited to " + std::to_string(irsub::kMaxOracleCap));
    try {
        irsub::check_oracle_cap(g, a.cap);
    } catch (const irsub::CapExceeded& ex) {
        throw UsageError(ex.what());
    }
    if (g.n() >= 8)
        std::cerr << "enumerating " << irsub::order_type_count(g.n()) << " order types (about "
                  << irsub::enumeration_cost(g.n(), g.d()) << " basic steps)\n";
    const auto tables = irsub::enumerate_order_types(g, {a.cap, threads});
    ordered_json out{{"graph", g.descriptor()}, {"query", a.query}, {"order_types", tables.total}};
    if (a.query == "pmf") {
        if (a.vertex >= g.n()) throw UsageError("--vertex out of range");
        run.arguments.insert(run.arguments.end(), {"--vertex", std::to_string(a.vertex)});
        out["vertex"] = a.vertex;
        for (const auto& p : irsub::exact_degree_pmf(tables, a.vertex)) {
            out["pmf"].push_back(p.str());
            out["pmf_decimal"].push_back(p.to_double());
        }
    } else if (a.query == "joint") {
        if (!a.k) throw UsageError("joint query needs --k");
        if (a.u >= g.n() || a.v >= g.n() || a.u == a.v) throw UsageError("--u and --v must be distinct vertices");
        if (*a.k > g.d()) throw UsageError("--k exceeds d");
        run.arguments.insert(run.arguments.end(), {"--u", std::to_string(a.u), "--v", std::to_string(a.v), "--k",
                                                   std::to_string(*a.k)});
        const auto p = irsub::exact_joint(tables, a.u, a.v, *a.k);
        const auto codeg = irsub::codegree(g, a.u, a.v);
        const auto bound = irsub::joint_bound(g.d(), codeg);
        out.update({{"u", a.u}, {"v", a.v}, {"k", *a.k}, {"joint", p.str()}, {"joint_decimal", p.to_double()},
                    {"codegree", codeg}, {"bound", irsub::fraction_string(bound)},
                    {"within_bound", p.value() <= bound}});
    } else if (a.query == "mean-var") {
        std::vector<std::uint32_t> ks;
        if (a.k) {
            if (*a.k > g.d()) throw UsageError("--k exceeds d");
            ks.push_back(*a.k);
            run.arguments.insert(run.arguments.end(), {"--k", std::to_string(*a.k)});
        } else {
            for (std::uint32_t k = 0; k <= g.d(); ++k) ks.push_back(k);
        }
        const auto cap = irsub::variance_cap(g.n(), g.d());
        out["variance_cap"] = irsub::fraction_string(cap);
        for (const auto k : ks) {
            const auto m = irsub::exact_mean_var(tables, k);
            out["per_k"].push_back({{"k", k}, {"mean", irsub::fraction_string(m.mean)},
                                    {"variance", irsub::fraction_string(m.variance)},
                                    {"mean_decimal", m.mean.get_d()}, {"variance_decimal", m.variance.get_d()},
                                    {"within_cap", m.variance <= cap}});
        }
    } else {
        throw UsageError("--query must be pmf, joint or mean-var");
    }
    const std::string text = out.dump(2) + "\n";
    if (a.out.empty()) {
        std::cout << text;
    } else {
        run.arguments.insert(run.arguments.end(), {"--out", a.out});
        run.output(a.out, text);
        run.manifest(manifest_path(a.out));
    }
    return kPass;
}

// ---- martingale --------------------------------------------------------

struct MartingaleArgs {
    std::string graph;
    std::uint32_t k = 0;
    std::uint64_t traces = 1;
    std::optional<std::uint64_t> seed;
    std::string out;
    std::string full;
};

ordered_json integral_or_double(double x) {
    if (x == std::round(x) && std::abs(x) < 9e15) return std::int64_t(x);
    return x;
}

int cmd_martingale(MartingaleArgs a, unsigned threads, Run& run) {
    if (a.traces == 0) throw UsageError("--traces must be at least 1");
    const auto g = irsub::load_graph(a.graph);
    if (a.k > g.d()) throw UsageError("--k exceeds the degree d=" + std::to_string(g.d()));
    run.record_graph(g);
    const auto seed = resolve_seed(a.seed, run);
    run.arguments = {"martingale", "--graph", a.graph, "--k", std::to_string(a.k), "--traces",
                     std::to_string(a.traces), "--seed", std::to_string(seed), "--out", a.out};
    if (!a.full.empty()) run.arguments.insert(run.arguments.end(), {"--full", a.full});
    const auto summaries = irsub::run_traces(g, a.k, a.traces, seed, {}, true, threads);
    std::string text;
    for (const auto& s : summaries) {
        ordered_json rec{{"master_seed", seed}, {"trace", s.index}, {"k", a.k},
                         {"max_abs_Y", s.max_abs_increment}, {"M_n", s.variance_proxy},
                         {"X_0", s.x0}, {"X_n", integral_or_double(s.xn)}, {"recount", s.recount},
                         {"max_quadrature_error", s.max_quadrature_error}};
        text += rec.dump() + "\n";
    }
    run.output(a.out, text);
    if (!a.full.empty()) {
        for (std::uint64_t i = 0; i < a.traces; ++i) {
            const auto trace = irsub::random_trace(g, a.k, seed, i);
            std::ostringstream csv;
            irsub::write_trace_csv(trace, csv);
            run.output(fs::path(a.full) / ("trace_" + std::to_string(i) + ".csv"), csv.str());
        }
    }
    run.manifest(manifest_path(a.out));
    std::cerr << a.traces << " traces -> " << a.out << "\n";
    return kPass;
}

// ---- verify ------------------------------------------------------------

struct VerifyArgs {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::string out;
};

int cmd_verify(VerifyArgs a, unsigned threads, Run& run) {
    const auto cfg = irsub::load_verify_config(a.config);
    if (!a.seed) a.seed = cfg.seed;
    const auto seed = resolve_seed(a.seed, run);
    const std::string out = a.out.empty() ? cfg.report_path : a.out;
    run.arguments = {"verify", "--config", a.config, "--seed", std::to_string(seed), "--out", out};
    run.document = cfg.source;
    const auto report = irsub::run_verify(cfg, seed, threads);
    run.output(out, report.dump());
    if (!cfg.tables_dir.empty())
        for (const auto& [name, csv] : report.tables) run.output(fs::path(cfg.tables_dir) / name, csv);
    run.manifest(manifest_path(out));
    for (const auto& c : report.checks)
        std::cout << (c.passed ? "PASS " : "FAIL ") << c.name << "\n";
    std::cout << (report.passed() ? "all checks passed" : "some checks failed") << " -> " << out << "\n";
    return report.passed() ? kPass : kFail;
}

// ---- replay ------------------------------------------------------------

int dispatch(const std::vector<std::string>& argv);

int cmd_replay(const std::string& manifest) {
    std::ifstream in(manifest);
    if (!in) throw UsageError("cannot open manifest " + manifest);
    const auto m = ordered_json::parse(in);
    std::vector<std::string> argv{"irsub"};
    for (const auto& s : m.at("config").at("arguments")) argv.push_back(s.get<std::string>());
    return dispatch(argv);
}

int dispatch(const std::vector<std::string>& raw) {
    CLI::App app{"irsub: degree counts of the irregular random subgraph model"};
    app.set_version_flag("--version", IRSUB_VERSION);
    app.require_subcommand(1);
    unsigned threads = irsub::default_threads();
    app.add_option("--threads", threads, "worker cap (default: IRSUB_THREADS or hardware concurrency)")
        ->check(CLI::PositiveNumber);

    GenerateArgs gen;
    auto* generate = app.add_subcommand("generate", "build a d-regular graph and write its edge list");
    generate->add_option("--family", gen.family, "complete, circulant, complete-bipartite, hypercube, random-regular, "
                                                  "disjoint-cliques")->required();
    generate->add_option("--n", gen.n, "vertex count");
    generate->add_option("--d", gen.d, "degree (random-regular)");
    generate->add_option("--offsets", gen.offsets, "circulant offsets")->delimiter(',');
    generate->add_option("--side", gen.side, "part size of K_{a,a}");
    generate->add_option("--dim", gen.dim, "hypercube dimension");
    generate->add_option("--count", gen.count, "number of cliques");
    generate->add_option("--size", gen.size, "clique size");
    generate->add_option("--seed", gen.seed, "random-regular seed");
    generate->add_option("--strategy", gen.strategy, "auto, pairing or steger-wormald");
    generate->add_option("--out", gen.out, "edge-list file")->required();

    SampleArgs smp;
    auto* sample = app.add_subcommand("sample", "draw weights and record m(H,k) per trial as JSONL");
    sample->add_option("--graph", smp.graph)->required();
    sample->add_option("--k", smp.k, "also report m(H,k) for this k");
    sample->add_option("--trials", smp.trials)->required();
    sample->add_option("--seed", smp.seed);
    sample->add_option("--out", smp.out)->required();

    OracleArgs orc;
    auto* oracle = app.add_subcommand("oracle", "exact probabilities by order-type enumeration");
    oracle->add_option("--graph", orc.graph)->required();
    oracle->add_option("--query", orc.query, "pmf, joint or mean-var");
    oracle->add_option("--k", orc.k);
    oracle->add_option("--vertex", orc.vertex);
    oracle->add_option("--u", orc.u);
    oracle->add_option("--v", orc.v);
    oracle->add_option("--cap", orc.cap, "largest n to enumerate");
    oracle->add_option("--out", orc.out, "JSON file (default: stdout)");

    MartingaleArgs mrt;
    auto* martingale = app.add_subcommand("martingale", "vertex-exposure martingale traces");
    martingale->add_option("--graph", mrt.graph)->required();
    martingale->add_option("--k", mrt.k)->required();
    martingale->add_option("--traces", mrt.traces)->required();
    martingale->add_option("--seed", mrt.seed);
    martingale->add_option("--out", mrt.out, "summary JSONL")->required();
    martingale->add_option("--full", mrt.full, "directory for per-trace CSV");

    VerifyArgs ver;
    auto* verify = app.add_subcommand("verify", "run the checks of a config file and write a report");
    verify->add_option("--config", ver.config)->required();
    verify->add_option("--seed", ver.seed, "overrides the config seed");
    verify->add_option("--out", ver.out, "report path (overrides the config)");

    std::string manifest;
    auto* replay = app.add_subcommand("replay", "re-run the command recorded in a manifest");
    replay->add_option("manifest", manifest)->required();

    std::vector<std::string> args(raw.rbegin(), raw.rend() - 1);
    try {
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kPass : kUsage;
    }

    Run run;
    try {
        if (*generate) return run.command = "generate", cmd_generate(gen, run);
        if (*sample) return run.command = "sample", cmd_sample(smp, threads, run);
        if (*oracle) return run.command = "oracle", cmd_oracle(orc, threads, run);
        if (*martingale) return run.command = "martingale", cmd_martingale(mrt, threads, run);
        if (*verify) return run.command = "verify", cmd_verify(ver, threads, run);
        if (*replay) return cmd_replay(manifest);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const irsub::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kUsage;
    } catch (const irsub::InvalidArgument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kRuntime;
    }
    return kUsage;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return dispatch(std::vector<std::string>(argv, argv + argc));
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kRuntime;
    }
}
