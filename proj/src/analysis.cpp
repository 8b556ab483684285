#include "irsub/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include <boost/math/distributions/chi_squared.hpp>

#include "irsub/error.hpp"
#include "irsub/parallel.hpp"
#include "irsub/rng.hpp"
#include "irsub/sampler.hpp"

namespace irsub {

namespace {

std::vector<std::uint32_t> all_or(std::span<const std::uint32_t> ks, std::uint32_t d) {
    std::vector<std::uint32_t> out(ks.begin(), ks.end());
    if (out.empty())
        for (std::uint32_t k = 0; k <= d; ++k) out.push_back(k);
    for (const auto k : out)
        if (k > d) throw InvalidArgument("degree k=" + std::to_string(k) + " exceeds d=" + std::to_string(d));
    return out;
}

std::vector<double> column(const std::vector<std::uint32_t>& table, std::uint64_t trials, std::uint32_t d,
                           std::uint32_t k) {
    std::vector<double> out(trials);
    for (std::uint64_t i = 0; i < trials; ++i) out[i] = table[i * (d + 1) + k];
    return out;
}

double expected_count(const Graph& g) { return double(g.n()) / double(g.d() + 1); }

double binomial_margin(double p, std::uint64_t count) {
    p = std::clamp(p, 0.0, 1.0);
    return kSigmaMargin * std::sqrt(p * (1.0 - p) / double(count));
}

}  // namespace

std::vector<std::uint32_t> sample_count_table(const Graph& g, std::uint64_t trials, std::uint64_t seed,
                                              unsigned threads) {
    const std::uint32_t width = g.d() + 1;
    std::vector<std::uint32_t> table(trials * width);
    parallel_for(trials, threads, [&](std::size_t i, unsigned) {
        const auto w = sample_weights(g.n(), seed, i);
        const auto hist = degree_histogram(subgraph_degrees(g, w.x), g.d());
        std::copy(hist.counts.begin(), hist.counts.end(), table.begin() + i * width);
    });
    return table;
}

MonteCarloResult run_monte_carlo(const ExperimentConfig& cfg) { return run_monte_carlo(build_graph(cfg.graph), cfg); }

MonteCarloResult run_monte_carlo(const Graph& g, const ExperimentConfig& cfg) {
    if (cfg.trials < 1) throw InvalidArgument("trials must be at least 1");
    if (!(cfg.kappa_constant > 0.0)) throw InvalidArgument("kappa constant must be positive");
    MonteCarloResult out;
    out.graph = g.descriptor();
    out.n = g.n();
    out.d = g.d();
    out.trials = cfg.trials;
    out.master_seed = cfg.master_seed;
    out.expected = expected_count(g);
    out.variance_cap = 17.0 * out.expected;
    out.kappa = cfg.kappa_constant * std::log(double(g.n()));
    const auto table = sample_count_table(g, cfg.trials, cfg.master_seed, cfg.threads);
    for (const auto k : all_or(cfg.k_set, g.d())) {
        DegreeCountStats s;
        s.k = k;
        s.summary = summarize(column(table, cfg.trials, g.d(), k));
        s.variance_defined = cfg.trials >= 2;
        s.k_plus = cfg.kappa_constant * std::max(double(k), out.kappa);
        out.per_k.push_back(s);
    }
    std::vector<double> maxima(cfg.trials);
    for (std::uint64_t i = 0; i < cfg.trials; ++i) {
        const auto row = table.begin() + i * (g.d() + 1);
        maxima[i] = *std::max_element(row, row + g.d() + 1);
    }
    out.max_count = summarize(maxima);
    return out;
}

std::vector<Check> check_means(const MonteCarloResult& result, double sigmas) {
    std::vector<Check> out;
    const double tol = sigmas * std::sqrt(result.variance_cap / double(result.trials));
    for (const auto& s : result.per_k) {
        Check c;
        c.name = "mean m(H," + std::to_string(s.k) + ")";
        c.observed = std::abs(s.summary.mean - result.expected);
        c.limit = tol;
        c.passed = c.observed <= tol;
        out.push_back(c);
    }
    return out;
}

double variance_upper_bound(double sample_variance, std::uint64_t count, double level) {
    if (count < 2) throw InvalidArgument("variance bound needs at least 2 samples");
    const double dof = double(count - 1);
    const boost::math::chi_squared dist(dof);
    return dof * sample_variance / boost::math::quantile(dist, 1.0 - level);
}

std::vector<VarianceCheck> verify_variance_bound(const Graph& g, std::span<const std::uint32_t> ks,
                                                 std::uint64_t trials, std::uint64_t seed,
                                                 const VarianceOptions& options) {
    const auto k_list = all_or(ks, g.d());
    const double cap = 17.0 * expected_count(g);
    std::vector<VarianceCheck> out;
    if (g.n() <= options.oracle_cap) {
        const auto tables = enumerate_order_types(g, {options.oracle_cap, options.threads});
        const mpq_class exact_cap = variance_cap(g.n(), g.d());
        for (const auto k : k_list) {
            const auto moments = exact_mean_var(tables, k);
            VarianceCheck c;
            c.k = k;
            c.mode = CheckMode::exact;
            c.variance = moments.variance.get_d();
            c.variance_exact = fraction_string(moments.variance);
            c.upper_bound = c.variance;
            c.cap = cap;
            c.limit = cap;
            c.passed = moments.variance <= exact_cap;
            out.push_back(c);
        }
        return out;
    }
    if (trials < 100) throw InvalidArgument("sampling-mode variance check needs at least 100 trials");
    const auto table = sample_count_table(g, trials, seed, options.threads);
    for (const auto k : k_list) {
        VarianceCheck c;
        c.k = k;
        c.mode = CheckMode::sampling;
        c.trials = trials;
        c.variance = summarize(column(table, trials, g.d(), k)).variance;
        c.upper_bound = variance_upper_bound(c.variance, trials, options.level);
        c.cap = cap;
        c.limit = cap * (1.0 + options.slack);
        c.passed = c.upper_bound <= c.limit;
        out.push_back(c);
    }
    return out;
}

VarianceCheck verify_variance_bound(const Graph& g, std::uint32_t k, std::uint64_t trials, std::uint64_t seed,
                                    const VarianceOptions& options) {
    const std::uint32_t ks[] = {k};
    return verify_variance_bound(g, ks, trials, seed, options).front();
}

MartingaleTrace random_trace(const Graph& g, std::uint32_t k, std::uint64_t seed, std::uint64_t index,
                             const QuadratureSpec& quad, const TraceOptions& options) {
    Stream stream(seed, index);
    const auto w = sample_weights(g.n(), stream);
    const auto order = stream.permutation(g.n());
    return run_trace(g, order, w.x, k, quad, options);
}

std::vector<TraceSummary> run_traces(const Graph& g, std::uint32_t k, std::uint64_t traces, std::uint64_t seed,
                                     const QuadratureSpec& quad, bool sq_increments, unsigned threads) {
    std::vector<TraceSummary> out(traces);
    TraceOptions opts;
    opts.sq_increments = sq_increments;
    parallel_for(traces, threads, [&](std::size_t i, unsigned) {
        Stream stream(seed, i);
        const auto w = sample_weights(g.n(), stream);
        const auto order = stream.permutation(g.n());
        const auto trace = run_trace(g, order, w.x, k, quad, opts);
        const auto degrees = subgraph_degrees(g, w.x);
        TraceSummary& s = out[i];
        s.index = i;
        s.max_abs_increment = trace.max_abs_increment();
        s.variance_proxy = trace.variance_proxy();
        s.x0 = trace.x_values.front();
        s.xn = trace.x_values.back();
        s.recount = static_cast<std::uint32_t>(std::count(degrees.begin(), degrees.end(), k));
        s.max_quadrature_error = trace.max_quadrature_error;
    });
    return out;
}

bool ConcentrationReport::passed() const {
    if (!monotone) return false;
    return std::all_of(rows.begin(), rows.end(), [](const TailRow& r) { return r.chebyshev_ok && r.bernstein_ok; });
}

ConcentrationReport concentration_report(const Graph& g, std::uint32_t k, std::uint64_t trials, std::uint64_t seed,
                                         std::span<const double> z_grid, const ConcentrationOptions& options) {
    if (trials < 1000) throw InvalidArgument("concentration report needs at least 1000 trials");
    if (k > g.d()) throw InvalidArgument("degree k exceeds d");
    if (options.pilot_traces < 1) throw InvalidArgument("concentration report needs pilot traces");
    ConcentrationReport out;
    out.graph = g.descriptor();
    out.k = k;
    out.trials = trials;
    out.expected = expected_count(g);
    const auto table = sample_count_table(g, trials, seed, options.threads);
    const auto counts = column(table, trials, g.d(), k);
    out.counts = summarize(counts);

    const auto pilot = run_traces(g, k, options.pilot_traces, derive_seed(seed, 1), options.quadrature, true,
                                  options.threads);
    std::vector<double> increments, proxies;
    for (const auto& s : pilot) {
        increments.push_back(s.max_abs_increment);
        proxies.push_back(s.variance_proxy);
    }
    out.pilot_traces = options.pilot_traces;
    out.a_star = quantile(increments, options.pilot_quantile);
    out.l_star = quantile(proxies, options.pilot_quantile);
    const auto above = [](const std::vector<double>& v, double cut) {
        return double(std::count_if(v.begin(), v.end(), [cut](double x) { return x > cut; })) / double(v.size());
    };
    out.increment_exceedance = above(increments, out.a_star);
    out.proxy_exceedance = above(proxies, out.l_star);

    std::vector<double> zs(z_grid.begin(), z_grid.end());
    std::sort(zs.begin(), zs.end());
    for (const double z : zs) {
        if (z < 0.0) throw InvalidArgument("tail thresholds must be non-negative");
        TailRow r;
        r.z = z;
        const auto hits = std::count_if(counts.begin(), counts.end(),
                                        [&](double x) { return std::abs(x - out.expected) >= z; });
        r.empirical = double(hits) / double(trials);
        r.chebyshev = z == 0.0 ? 1.0 : std::min(1.0, 17.0 * out.expected / (z * z));
        r.bernstein =
            std::min(1.0, bernstein_tail(z, out.a_star, out.l_star) + out.increment_exceedance + out.proxy_exceedance);
        r.chebyshev_margin = binomial_margin(r.chebyshev, trials);
        r.bernstein_margin = binomial_margin(r.bernstein, trials);
        r.chebyshev_ok = r.empirical <= r.chebyshev + r.chebyshev_margin;
        r.bernstein_ok = r.empirical <= r.bernstein + r.bernstein_margin;
        out.rows.push_back(r);
    }
    out.monotone = std::is_sorted(out.rows.begin(), out.rows.end(),
                                  [](const TailRow& a, const TailRow& b) { return a.empirical > b.empirical; });
    return out;
}

std::vector<ExactTailRow> exact_chebyshev_check(const OracleTables& tables, std::uint32_t k,
                                                std::span<const double> z_grid) {
    const auto moments = exact_mean_var(tables, k);
    std::vector<ExactTailRow> out;
    for (const double z : z_grid) {
        if (z < 0.0) throw InvalidArgument("tail thresholds must be non-negative");
        ExactTailRow r;
        r.z = z;
        const mpq_class zq(z);
        r.tail = exact_tail(tables, k, zq);
        // z = 0: the tail is 1 and the bound is read as clipped at 1
        r.chebyshev = z == 0.0 ? mpq_class(1) : mpq_class(moments.variance / (zq * zq));
        r.passed = r.tail <= r.chebyshev;
        out.push_back(r);
    }
    return out;
}

ExactnessReport check_martingale_exactness(const Graph& g, std::uint32_t k, std::uint64_t traces,
                                           std::uint64_t seed, unsigned threads) {
    ExactnessReport out;
    out.traces = traces;
    const double expected = expected_count(g);
    for (const auto& s : run_traces(g, k, traces, seed, {}, false, threads)) {
        out.max_x0_error = std::max(out.max_x0_error, std::abs(s.x0 - expected));
        if (s.xn != std::round(s.xn)) ++out.non_integer;
        if (s.xn != double(s.recount)) ++out.recount_mismatches;
    }
    return out;
}

ProxyReport check_variance_proxy(const Graph& g, std::uint32_t k, std::uint64_t traces, std::uint64_t seed,
                                 double exact_variance, const QuadratureSpec& quad, unsigned threads) {
    if (traces < 2) throw InvalidArgument("variance proxy check needs at least 2 traces");
    std::vector<double> proxies;
    for (const auto& s : run_traces(g, k, traces, seed, quad, true, threads)) proxies.push_back(s.variance_proxy);
    ProxyReport out;
    out.traces = traces;
    out.proxy = summarize(proxies);
    out.standard_error = std::sqrt(out.proxy.variance / double(traces));
    out.target = exact_variance;
    out.passed = std::abs(out.proxy.mean - exact_variance) <= kSigmaMargin * out.standard_error;
    return out;
}

DecompositionReport check_decomposition(const Graph& g, std::uint32_t k, std::uint64_t traces, std::uint64_t seed,
                                        double tolerance, const QuadratureSpec& quad, unsigned threads) {
    if (k > g.d()) throw InvalidArgument("degree k exceeds d");
    struct Slot {
        double worst = -INFINITY, worst_neighbor = -INFINITY, quad_error = 0.0;
        std::uint64_t violations = 0, neighbor_violations = 0;
    };
    std::vector<Slot> slots(traces);
    parallel_for(traces, threads, [&](std::size_t i, unsigned) {
        Stream stream(seed, i);
        const auto w = sample_weights(g.n(), stream);
        const auto order = stream.permutation(g.n());
        RevealState state(g, order);
        Slot& s = slots[i];
        for (std::uint32_t j = 1; j <= g.n(); ++j) {
            const auto dec = decompose_increment(state, j, k, quad);
            const double rhs = 2.0 * dec.a1 + 2.0 * dec.a2;
            const double excess = dec.sq_increment - rhs;
            const double neighbor_excess = dec.neighbor_sq - rhs;
            s.worst = std::max(s.worst, excess);
            s.worst_neighbor = std::max(s.worst_neighbor, neighbor_excess);
            s.quad_error = std::max(s.quad_error, dec.error_estimate);
            if (excess > tolerance) ++s.violations;
            if (neighbor_excess > tolerance) ++s.neighbor_violations;
            martingale_step(state, j, w.x[order[j - 1]], k);
        }
    });
    DecompositionReport out;
    out.k = k;
    out.traces = traces;
    out.steps = traces * g.n();
    out.tolerance = tolerance;
    out.worst_excess = out.worst_neighbor_excess = -INFINITY;
    for (const auto& s : slots) {
        out.worst_excess = std::max(out.worst_excess, s.worst);
        out.worst_neighbor_excess = std::max(out.worst_neighbor_excess, s.worst_neighbor);
        out.max_quadrature_error = std::max(out.max_quadrature_error, s.quad_error);
        out.violations += s.violations;
        out.neighbor_violations += s.neighbor_violations;
    }
    return out;
}

double kl_exponent(double x, double alpha) {
    if (x < 0.0 || x > 1.0 || alpha < 0.0 || alpha > 1.0) throw InvalidArgument("kl_exponent: arguments must lie in [0, 1]");
    // log1p form keeps f(x) = 0 exact and small differences accurate
    const double left = alpha == 0.0 ? 0.0 : alpha * std::log1p((x - alpha) / alpha);
    const double right = alpha == 1.0 ? 0.0 : (1.0 - alpha) * std::log1p((alpha - x) / (1.0 - alpha));
    return left + right;
}

FInequalityReport check_f_inequality(std::size_t resolution) {
    if (resolution < 100) throw InvalidArgument("f-inequality grid needs resolution >= 100");
    const double edge = 1e-6;
    const double span = std::log((1.0 - edge) / edge);
    std::vector<double> grid(resolution);
    for (std::size_t i = 0; i < resolution; ++i) {
        const double t = -span + 2.0 * span * double(i) / double(resolution - 1);
        grid[i] = 1.0 / (1.0 + std::exp(-t));
    }
    FInequalityReport out;
    out.resolution = resolution;
    out.max_f = -INFINITY;
    out.c_hat = INFINITY;
    for (const double x : grid) {
        for (const double alpha : grid) {
            const double f = kl_exponent(x, alpha);
            if (alpha == x) {
                out.max_abs_diagonal = std::max(out.max_abs_diagonal, std::abs(f));
                continue;
            }
            out.max_f = std::max(out.max_f, f);
            const double gap = std::abs(x - alpha);
            const double scale = std::min(gap, (1.0 / x + 1.0 / (1.0 - x)) * gap * gap);
            const double ratio = -f / scale;
            if (ratio < out.c_hat) {
                out.c_hat = ratio;
                out.c_hat_x = x;
                out.c_hat_alpha = alpha;
            }
        }
    }
    return out;
}

namespace {

double log_binomial_step(double x, std::int64_t t, std::int64_t h) {
    const double c = (1.0 - x) * double(h + 1) - x * double(t - h);
    if (c == 0.0) return -INFINITY;
    return std::lgamma(double(t + 1)) - std::lgamma(double(h + 2)) - std::lgamma(double(t - h + 1)) +
           double(h) * std::log(x) + double(t - h - 1) * std::log1p(-x) + std::log(std::abs(c));
}

double log_stirling_bound(double x, std::int64_t t, std::int64_t h) {
    const double alpha = double(h) / double(t - 1);
    return std::log(std::abs(double(t) * (alpha - x)) + 3.0) - 1.5 * std::log(alpha * (1.0 - alpha) * double(t)) +
           kl_exponent(x, alpha) * double(t - 1);
}

void check_stirling_domain(double x, std::int64_t t, std::int64_t h) {
    if (!(x > 0.0 && x < 1.0)) throw InvalidArgument("stirling bound needs 0 < x < 1");
    if (!(h > 0 && h < t - 1)) throw InvalidArgument("stirling bound needs 0 < h < t-1");
}

}  // namespace

double binomial_step(double x, std::int64_t t, std::int64_t h) {
    check_stirling_domain(x, t, h);
    return std::exp(log_binomial_step(x, t, h));
}

double stirling_bound(double x, std::int64_t t, std::int64_t h) {
    check_stirling_domain(x, t, h);
    return std::exp(log_stirling_bound(x, t, h));
}

StirlingReport check_stirling_delta(std::uint64_t samples, std::uint64_t seed) {
    if (samples < 1000) throw InvalidArgument("stirling check needs at least 1000 samples");
    StirlingReport out;
    out.samples = samples;
    Stream stream(seed, 0);
    const double log_range = std::log(1e4 / 3.0);
    for (std::uint64_t i = 0; i < samples; ++i) {
        double x = 0.0;
        while (x == 0.0) x = stream.uniform();
        const auto t = std::clamp<std::int64_t>(std::int64_t(3.0 * std::exp(stream.uniform() * log_range)), 3, 10000);
        const auto h = 1 + std::int64_t(stream.below(std::uint64_t(t - 2)));
        const double log_step = log_binomial_step(x, t, h);
        out.max_step = std::max(out.max_step, std::exp(log_step));
        const double ratio = std::exp(log_step - log_stirling_bound(x, t, h));
        if (ratio > out.max_ratio) {
            out.max_ratio = ratio;
            out.worst_x = x;
            out.worst_t = t;
            out.worst_h = h;
        }
    }
    return out;
}

IntervalClaimsReport interval_claims_stats(std::uint64_t m, double h, std::uint64_t reps, std::uint64_t seed,
                                           double kappa) {
    if (m < 100) throw InvalidArgument("interval claims need m >= 100");
    if (reps < 100) throw InvalidArgument("interval claims need reps >= 100");
    if (!(h > 1.0) || h > double(m)) throw InvalidArgument("interval claims need 1 < h <= m");
    IntervalClaimsReport out;
    out.m = m;
    out.h = h;
    out.reps = reps;
    out.kappa = kappa > 0.0 ? kappa : std::log(double(m));
    const double width = h / double(m);
    const double spread = std::sqrt(out.kappa * std::max(h, out.kappa));
    struct Flags {
        bool deviation = false, overfill = false, gap = false;
    };
    std::vector<Flags> flags(reps);
    for (std::uint64_t r = 0; r < reps; ++r) {
        Stream stream(seed, r);
        std::vector<double> points(m);
        std::uint64_t inside = 0;
        for (auto& p : points) {
            p = stream.uniform();
            if (p < width) ++inside;
        }
        flags[r].deviation = std::abs(double(inside) - h) > spread;
        flags[r].overfill = double(inside) > 2.0 * h;
        std::sort(points.begin(), points.end());
        double previous = 0.0, longest = 0.0;
        for (const double p : points) {
            longest = std::max(longest, p - previous);
            previous = p;
        }
        longest = std::max(longest, 1.0 - previous);
        flags[r].gap = longest >= width;
    }
    const auto fill = [&](FrequencyCheck& c, const std::string& claim, double bound, auto member) {
        c.claim = claim;
        c.hits = std::uint64_t(std::count_if(flags.begin(), flags.end(), member));
        c.frequency = double(c.hits) / double(reps);
        c.bound = std::min(1.0, bound);
        c.margin = binomial_margin(c.bound, reps);
        c.passed = c.frequency <= c.bound + c.margin;
    };
    fill(out.deviation, "count off h +- sqrt(kappa max(h,kappa))", std::exp(-out.kappa / 3.0),
         [](const Flags& f) { return f.deviation; });
    fill(out.overfill, "more than 2h points", std::exp(-h / 3.0), [](const Flags& f) { return f.overfill; });
    fill(out.empty_gap, "empty gap of length h/m", 3.0 * double(m) * std::exp(-h / 3.0),
         [](const Flags& f) { return f.gap; });
    return out;
}

GraphFamilySpec family_with_degree(GraphFamily family, std::uint32_t n, std::uint32_t d, std::uint64_t seed) {
    GraphFamilySpec spec;
    spec.family = family;
    switch (family) {
        case GraphFamily::circulant: {
            if (d == 0 || d >= n) throw InvalidArgument("circulant needs 0 < d < n");
            if (d % 2 == 1 && n % 2 == 1) throw InvalidArgument("circulant with odd d needs even n");
            spec.parameters.push_back(n);
            for (std::uint32_t o = 1; o <= d / 2; ++o) spec.parameters.push_back(o);
            if (d % 2 == 1) spec.parameters.push_back(n / 2);
            return spec;
        }
        case GraphFamily::random_regular:
            spec.parameters = {n, d};
            spec.seed = seed;
            return spec;
        case GraphFamily::disjoint_cliques:
            if (n % (d + 1) != 0) throw InvalidArgument("disjoint cliques need (d+1) | n");
            spec.parameters = {n / (d + 1), d + 1};
            return spec;
        default:
            throw InvalidArgument("family " + family_name(family) + " has no free degree parameter");
    }
}

ScalingTable scaling_study(GraphFamily family, std::span<const std::uint32_t> n_list, std::uint32_t d,
                           std::uint64_t trials, std::uint64_t seed, int k, const QuadratureSpec& quad,
                           unsigned threads) {
    if (n_list.size() < 3) throw InvalidArgument("scaling study needs at least 3 values of n");
    if (!std::is_sorted(n_list.begin(), n_list.end()) ||
        std::adjacent_find(n_list.begin(), n_list.end()) != n_list.end())
        throw InvalidArgument("scaling study needs strictly increasing n");
    if (trials < 1) throw InvalidArgument("scaling study needs at least 1 trial");
    const std::uint32_t kk = k < 0 ? d / 2 : std::uint32_t(k);
    if (kk > d) throw InvalidArgument("degree k exceeds d");
    ScalingTable out;
    out.family = family_name(family);
    double lo = INFINITY, hi = 0.0;
    for (std::size_t idx = 0; idx < n_list.size(); ++idx) {
        const auto n = n_list[idx];
        const Graph g = build_graph(family_with_degree(family, n, d, derive_seed(seed, 100 + idx)));
        const auto runs = run_traces(g, kk, trials, derive_seed(seed, idx), quad, true, threads);
        std::vector<double> increments, proxies;
        ScalingRow row;
        for (const auto& s : runs) {
            increments.push_back(s.max_abs_increment);
            proxies.push_back(s.variance_proxy);
            row.max_quadrature_error = std::max(row.max_quadrature_error, s.max_quadrature_error);
        }
        row.n = n;
        row.d = d;
        row.k = kk;
        row.trials = trials;
        row.increment_quantile = quantile(increments, out.quantile_level);
        row.proxy_quantile = quantile(proxies, out.quantile_level);
        const double log_n = std::log(double(n));
        row.increment_ratio = row.increment_quantile / log_n;
        row.proxy_ratio = row.proxy_quantile / (log_n * double(n) / double(d));
        lo = std::min(lo, row.increment_ratio);
        hi = std::max(hi, row.increment_ratio);
        out.rows.push_back(row);
    }
    out.increment_ratio_spread = hi / lo;
    return out;
}

std::vector<CodegreeRow> check_codegree_identity(std::span<const CodegreeCase> cases, std::uint64_t seed) {
    std::vector<CodegreeRow> out;
    std::uint64_t index = 0;
    for (const auto& c : cases) {
        for (std::uint32_t i = 0; i < c.graphs; ++i, ++index) {
            const Graph g = build_graph(family_with_degree(GraphFamily::random_regular, c.n, c.d,
                                                           derive_seed(seed, index)));
            CodegreeRow row;
            row.graph = g.descriptor();
            row.sum = codegree_sum(g);
            row.expected = std::uint64_t(c.n) * c.d * (c.d - 1);
            out.push_back(row);
        }
    }
    return out;
}

void write_tail_csv(const ConcentrationReport& report, std::ostream& out) {
    out << "z,empirical,chebyshev,bernstein,chebyshev_margin,bernstein_margin,chebyshev_ok,bernstein_ok\n";
    char line[512];
    for (const auto& r : report.rows) {
        std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%d,%d\n", r.z, r.empirical, r.chebyshev,
                      r.bernstein, r.chebyshev_margin, r.bernstein_margin, int(r.chebyshev_ok), int(r.bernstein_ok));
        out << line;
    }
}

void write_scaling_csv(const ScalingTable& table, std::ostream& out) {
    out << "n,d,k,trials,max_abs_Y_quantile,M_n_quantile,max_abs_Y_over_log_n,M_n_over_log_n_n_over_d\n";
    char line[512];
    for (const auto& r : table.rows) {
        std::snprintf(line, sizeof line, "%u,%u,%u,%llu,%.17g,%.17g,%.17g,%.17g\n", r.n, r.d, r.k,
                      static_cast<unsigned long long>(r.trials), r.increment_quantile, r.proxy_quantile,
                      r.increment_ratio, r.proxy_ratio);
        out << line;
    }
}

}  // namespace irsub
