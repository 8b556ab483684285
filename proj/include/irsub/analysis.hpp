#pragma once

#include <cmath>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "irsub/exact_oracle.hpp"
#include "irsub/graph.hpp"
#include "irsub/martingale.hpp"
#include "irsub/numeric.hpp"
#include "irsub/quadrature.hpp"

namespace irsub {

/// Statistical checks use this many standard errors of margin.
inline constexpr double kSigmaMargin = 3.0;

struct ExperimentConfig {
    GraphFamilySpec graph;
    std::vector<std::uint32_t> k_set;  // empty means every k = 0..d
    std::uint64_t trials = 1;
    std::uint64_t master_seed = 0;
    /// C in kappa = C log n and k_+ = C max(k, kappa); reported only.
    double kappa_constant = 1.0;
    QuadratureSpec quadrature;
    unsigned threads = 1;
};

/// One pass/fail line of a report.
struct Check {
    std::string name;
    bool passed = false;
    double observed = 0.0;
    double limit = 0.0;
    std::string detail;
};

struct DegreeCountStats {
    std::uint32_t k = 0;
    SampleSummary summary;
    /// False when trials < 2 (variance is NaN).
    bool variance_defined = false;
    double k_plus = 0.0;
};

struct MonteCarloResult {
    std::string graph;
    std::uint32_t n = 0;
    std::uint32_t d = 0;
    std::uint64_t trials = 0;
    std::uint64_t master_seed = 0;
    double expected = 0.0;      // n/(d+1)
    double variance_cap = 0.0;  // 17 n/(d+1)
    double kappa = 0.0;
    std::vector<DegreeCountStats> per_k;
    SampleSummary max_count;  // m(H)
};

/// m(H, k) for k = 0..d of trial i, drawn from Stream(seed, i); row-major,
/// trials x (d+1). Independent of the worker count.
std::vector<std::uint32_t> sample_count_table(const Graph& g, std::uint64_t trials, std::uint64_t seed,
                                              unsigned threads = 1);

MonteCarloResult run_monte_carlo(const ExperimentConfig& cfg);
MonteCarloResult run_monte_carlo(const Graph& g, const ExperimentConfig& cfg);

/// |mean - n/(d+1)| <= sigmas * sqrt(17 (n/(d+1)) / trials) for every k.
std::vector<Check> check_means(const MonteCarloResult& result, double sigmas = 4.0);

/// One-sided upper confidence bound (n-1) s^2 / chi2_{1-level}(n-1).
double variance_upper_bound(double sample_variance, std::uint64_t count, double level = 0.99);

enum class CheckMode { exact, sampling };

struct VarianceOptions {
    std::uint32_t oracle_cap = 8;
    double level = 0.99;
    double slack = 0.1;
    unsigned threads = 1;
};

struct VarianceCheck {
    std::uint32_t k = 0;
    CheckMode mode = CheckMode::sampling;
    std::uint64_t trials = 0;
    double variance = 0.0;
    std::string variance_exact;  // exact mode only
    double upper_bound = 0.0;    // sampling mode: chi-square upper bound
    double cap = 0.0;            // 17 n/(d+1)
    double limit = 0.0;          // cap, or cap (1 + slack) when sampling
    bool passed = false;
};

/// Exact when g.n() <= oracle_cap (trials ignored), otherwise sampling with
/// at least 100 trials. Empty `ks` means every k.
std::vector<VarianceCheck> verify_variance_bound(const Graph& g, std::span<const std::uint32_t> ks,
                                                 std::uint64_t trials, std::uint64_t seed,
                                                 const VarianceOptions& options = {});
VarianceCheck verify_variance_bound(const Graph& g, std::uint32_t k, std::uint64_t trials, std::uint64_t seed,
                                    const VarianceOptions& options = {});

/// Weights then arrival order of trace `index`, both from Stream(seed, index).
MartingaleTrace random_trace(const Graph& g, std::uint32_t k, std::uint64_t seed, std::uint64_t index,
                             const QuadratureSpec& quad = {}, const TraceOptions& options = {});

struct TraceSummary {
    std::uint64_t index = 0;
    double max_abs_increment = 0.0;
    double variance_proxy = 0.0;
    double x0 = 0.0;
    double xn = 0.0;
    std::uint32_t recount = 0;  // m(H, k) from an independent recount
    double max_quadrature_error = 0.0;
};

/// Summaries of traces 0..traces-1; the traces themselves are dropped.
std::vector<TraceSummary> run_traces(const Graph& g, std::uint32_t k, std::uint64_t traces, std::uint64_t seed,
                                     const QuadratureSpec& quad = {}, bool sq_increments = true,
                                     unsigned threads = 1);

struct ConcentrationOptions {
    std::uint64_t pilot_traces = 200;
    double pilot_quantile = 0.999;
    QuadratureSpec quadrature;
    unsigned threads = 1;
};

struct TailRow {
    double z = 0.0;
    double empirical = 0.0;
    double chebyshev = 0.0;  // min(1, 17 (n/(d+1)) / z^2)
    double bernstein = 0.0;  // min(1, exp term + pilot exceedance rates)
    double chebyshev_margin = 0.0;  // 3 binomial standard errors at the bound
    double bernstein_margin = 0.0;
    bool chebyshev_ok = false;
    bool bernstein_ok = false;
};

struct ConcentrationReport {
    std::string graph;
    std::uint32_t k = 0;
    std::uint64_t trials = 0;
    double expected = 0.0;
    SampleSummary counts;
    std::uint64_t pilot_traces = 0;
    double a_star = 0.0;  // pilot quantile of max_j |Y_j|
    double l_star = 0.0;  // pilot quantile of M_n
    double increment_exceedance = 0.0;  // pilot P[max |Y_j| > a*]
    double proxy_exceedance = 0.0;      // pilot P[M_n > L*]
    std::vector<TailRow> rows;
    bool monotone = false;
    bool passed() const;
};

/// Requires trials >= 1000. The pilot uses a seed derived from `seed`.
ConcentrationReport concentration_report(const Graph& g, std::uint32_t k, std::uint64_t trials, std::uint64_t seed,
                                         std::span<const double> z_grid, const ConcentrationOptions& options = {});

struct ExactTailRow {
    double z = 0.0;
    mpq_class tail;
    mpq_class chebyshev;  // Var(X) / z^2, unclipped; 1 at z = 0
    bool passed = false;
};

/// P[|X - E X| >= z] <= Var(X) / z^2, exactly, for every z of the grid.
std::vector<ExactTailRow> exact_chebyshev_check(const OracleTables& tables, std::uint32_t k,
                                                std::span<const double> z_grid);

struct ExactnessReport {
    std::uint64_t traces = 0;
    double max_x0_error = 0.0;
    std::uint64_t recount_mismatches = 0;
    std::uint64_t non_integer = 0;
    bool passed() const { return traces > 0 && max_x0_error <= 1e-9 && recount_mismatches == 0 && non_integer == 0; }
};

/// X_n is the recount of m(H, k) and X_0 = n/(d+1) on every trace.
ExactnessReport check_martingale_exactness(const Graph& g, std::uint32_t k, std::uint64_t traces,
                                           std::uint64_t seed, unsigned threads = 1);

struct ProxyReport {
    std::uint64_t traces = 0;
    SampleSummary proxy;
    double standard_error = 0.0;
    double target = 0.0;  // exact Var(X)
    bool passed = false;
};

/// Mean of M_n over many traces against the exact variance (|diff| <= 3 SE).
ProxyReport check_variance_proxy(const Graph& g, std::uint32_t k, std::uint64_t traces, std::uint64_t seed,
                                 double exact_variance, const QuadratureSpec& quad = {}, unsigned threads = 1);

struct DecompositionReport {
    std::uint32_t k = 0;
    std::uint64_t traces = 0;
    std::uint64_t steps = 0;
    double tolerance = 1e-6;
    /// max over steps of E[Y_j^2 | F_{j-1}] - 2 A_1 - 2 A_2
    double worst_excess = 0.0;
    std::uint64_t violations = 0;
    /// Same with the revealed vertex's own term removed from Y_j.
    double worst_neighbor_excess = 0.0;
    std::uint64_t neighbor_violations = 0;
    double max_quadrature_error = 0.0;
    bool passed() const { return violations == 0; }
    bool neighbor_passed() const { return neighbor_violations == 0; }
};

DecompositionReport check_decomposition(const Graph& g, std::uint32_t k, std::uint64_t traces, std::uint64_t seed,
                                        double tolerance = 1e-6, const QuadratureSpec& quad = {},
                                        unsigned threads = 1);

/// f(alpha) = alpha log(x/alpha) + (1-alpha) log((1-x)/(1-alpha)).
double kl_exponent(double x, double alpha);

struct FInequalityReport {
    std::size_t resolution = 0;
    double max_f = 0.0;        // over alpha != x; must be <= 0
    double max_abs_diagonal = 0.0;
    double c_hat = 0.0;
    double c_hat_x = 0.0;
    double c_hat_alpha = 0.0;
    bool passed() const { return max_f <= 0.0 && max_abs_diagonal == 0.0 && c_hat > 0.0; }
};

/// Grid points are evenly spaced in logit(x) over [1e-6, 1 - 1e-6], so they
/// crowd both ends. Requires resolution >= 100.
FInequalityReport check_f_inequality(std::size_t resolution);

/// |p(x,t,h) - p(x,t,h+1)|, evaluated in log space.
double binomial_step(double x, std::int64_t t, std::int64_t h);
/// (|t(alpha-x)| + 3) / (alpha(1-alpha)t)^{3/2} * exp(f(alpha)(t-1)), alpha = h/(t-1).
double stirling_bound(double x, std::int64_t t, std::int64_t h);

struct StirlingReport {
    std::uint64_t samples = 0;
    double max_ratio = 0.0;
    double max_step = 0.0;
    double worst_x = 0.0;
    std::int64_t worst_t = 0;
    std::int64_t worst_h = 0;
    bool passed() const { return samples > 0 && std::isfinite(max_ratio) && max_step <= 1.0; }
};

/// Samples x uniform, t log-uniform on [3, 10^4], h uniform on 1..t-2.
/// Requires samples >= 1000.
StirlingReport check_stirling_delta(std::uint64_t samples, std::uint64_t seed);

struct FrequencyCheck {
    std::string claim;
    std::uint64_t hits = 0;
    double frequency = 0.0;
    double bound = 0.0;
    double margin = 0.0;
    bool passed = false;
};

struct IntervalClaimsReport {
    std::uint64_t m = 0;
    double h = 0.0;
    std::uint64_t reps = 0;
    double kappa = 0.0;
    FrequencyCheck deviation;  // count in a fixed length-h/m interval off h +- sqrt(kappa max(h, kappa))
    FrequencyCheck overfill;   // more than 2h points in a fixed length-h/m interval
    FrequencyCheck empty_gap;  // some gap of length >= h/m in [0, 1]
    bool passed() const { return deviation.passed && overfill.passed && empty_gap.passed; }
};

/// kappa <= 0 selects kappa = ln m. Requires m >= 100, reps >= 100, h > 1.
IntervalClaimsReport interval_claims_stats(std::uint64_t m, double h, std::uint64_t reps, std::uint64_t seed,
                                           double kappa = 0.0);

struct ScalingRow {
    std::uint32_t n = 0;
    std::uint32_t d = 0;
    std::uint32_t k = 0;
    std::uint64_t trials = 0;
    double increment_quantile = 0.0;  // of max_j |Y_j|
    double proxy_quantile = 0.0;      // of M_n
    double increment_ratio = 0.0;     // / log n
    double proxy_ratio = 0.0;         // / ((log n) n / d)
    double max_quadrature_error = 0.0;
};

struct ScalingTable {
    std::string family;
    double quantile_level = 0.999;
    std::vector<ScalingRow> rows;
    double increment_ratio_spread = 0.0;  // max / min of increment_ratio
    bool passed() const { return rows.size() >= 3 && increment_ratio_spread < 2.0; }
};

/// A family member with n vertices and degree d (circulant, random_regular
/// or disjoint_cliques).
GraphFamilySpec family_with_degree(GraphFamily family, std::uint32_t n, std::uint32_t d, std::uint64_t seed);

/// k < 0 selects k = d/2. Requires at least 3 increasing n values.
ScalingTable scaling_study(GraphFamily family, std::span<const std::uint32_t> n_list, std::uint32_t d,
                           std::uint64_t trials, std::uint64_t seed, int k = -1, const QuadratureSpec& quad = {},
                           unsigned threads = 1);

struct CodegreeRow {
    std::string graph;
    std::uint64_t sum = 0;
    std::uint64_t expected = 0;  // n d (d-1)
    bool passed() const { return sum == expected; }
};

struct CodegreeCase {
    std::uint32_t n = 0;
    std::uint32_t d = 0;
    std::uint32_t graphs = 0;
};

/// Random regular graphs seeded derive_seed(seed, i).
std::vector<CodegreeRow> check_codegree_identity(std::span<const CodegreeCase> cases, std::uint64_t seed);

void write_tail_csv(const ConcentrationReport& report, std::ostream& out);
void write_scaling_csv(const ScalingTable& table, std::ostream& out);

}  // namespace irsub
