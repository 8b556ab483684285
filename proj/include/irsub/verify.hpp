#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "irsub/analysis.hpp"
#include "irsub/error.hpp"
#include "irsub/graph.hpp"

namespace irsub {

using ordered_json = nlohmann::ordered_json;

/// Schema violation in a verify config; `path` is the offending field,
/// e.g. "checks.variance[0].trials".
class ConfigError : public Error {
public:
    ConfigError(std::string path, const std::string& message)
        : Error(path + ": " + message), path_(std::move(path)) {}
    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

struct GraphEntry {
    GraphFamilySpec spec;
    std::vector<std::uint32_t> ks;  // empty: all
};

struct ExactEntry : GraphEntry {
    std::vector<double> z_grid;
};
struct MonteCarloEntry : GraphEntry {
    std::uint64_t trials = 0;
    double kappa_constant = 1.0;
    double sigmas = 4.0;
};
struct VarianceEntry : GraphEntry {
    std::uint64_t trials = 0;  // 0: exact mode expected
};
struct ConcentrationEntry : GraphEntry {
    std::uint64_t trials = 0;
    std::uint64_t pilot_traces = 200;
    std::vector<double> z_grid;
};
struct TraceEntry : GraphEntry {
    std::uint64_t traces = 0;
    double tolerance = 1e-6;  // decomposition only
};
struct IntervalEntry {
    std::uint64_t m = 0;
    double h = 0.0;
    std::uint64_t reps = 0;
    double kappa = 0.0;
};
struct ScalingEntry {
    GraphFamily family = GraphFamily::circulant;
    std::vector<std::uint32_t> n_list;
    std::uint32_t d = 0;
    std::uint64_t trials = 0;
    int k = -1;
};

struct VerifyConfig {
    ordered_json source;  // the document as read, for the manifest
    std::optional<std::uint64_t> seed;
    std::uint32_t oracle_cap = 8;
    QuadratureSpec quadrature;
    std::string report_path = "report.json";
    std::string tables_dir;  // CSV tables when non-empty

    std::vector<ExactEntry> exact;
    std::vector<MonteCarloEntry> monte_carlo;
    std::vector<VarianceEntry> variance;
    std::vector<ConcentrationEntry> concentration;
    std::vector<TraceEntry> martingale;
    std::vector<TraceEntry> variance_proxy;
    std::vector<TraceEntry> decomposition;
    std::vector<CodegreeCase> codegree;
    std::optional<std::size_t> f_inequality;
    std::optional<std::uint64_t> stirling;
    std::vector<IntervalEntry> interval_claims;
    std::optional<ScalingEntry> scaling;
};

/// Strict parse: unknown keys, wrong types and out-of-range values throw
/// ConfigError naming the field.
VerifyConfig parse_verify_config(const ordered_json& doc);
VerifyConfig load_verify_config(const std::string& path);

/// Graph object of a config, e.g. {"family": "circulant", "n": 8, "offsets": [1, 2]}.
GraphFamilySpec parse_graph_spec(const ordered_json& node, const std::string& path);

struct BoundReport {
    ordered_json body;
    std::vector<Check> checks;
    /// CSV tables keyed by file name.
    std::vector<std::pair<std::string, std::string>> tables;
    bool passed() const;
    /// Canonical text: body plus the check list, pretty-printed.
    std::string dump() const;
};

/// Runs every configured check with the given master seed. The result does
/// not depend on `threads`.
BoundReport run_verify(const VerifyConfig& config, std::uint64_t seed, unsigned threads);

}  // namespace irsub
