#include "irsub/martingale.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

#include "irsub/binomial.hpp"
#include "irsub/error.hpp"
#include "irsub/numeric.hpp"

namespace irsub {

// ---------------------------------------------------------------- RevealState

RevealState::RevealState(const Graph& g, std::vector<Vertex> order)
    : graph_(&g), order_(std::move(order)), position_(g.n(), g.n()), x_(g.n(), 0.0),
      unrevealed_(g.n(), g.d()), thresholds_(g.n()) {
    if (order_.size() != g.n()) throw InvalidArgument("vertex order must list every vertex once");
    for (std::uint32_t i = 0; i < order_.size(); ++i) {
        const Vertex v = order_[i];
        if (v >= g.n() || position_[v] != g.n()) throw InvalidArgument("vertex order is not a permutation");
        position_[v] = i;
    }
    for (auto& t : thresholds_) t.reserve(g.d());
}

Vertex RevealState::next_vertex() const {
    if (complete()) throw InvalidArgument("every vertex is already revealed");
    return order_[prefix_];
}

double RevealState::x(Vertex v) const {
    if (!revealed(v)) throw InvalidArgument("weight of vertex " + std::to_string(v) + " not revealed yet");
    return x_[v];
}

std::uint32_t RevealState::exceedances(Vertex v, double y) const {
    const auto& t = thresholds_[v];
    return static_cast<std::uint32_t>(std::upper_bound(t.begin(), t.end(), y) - t.begin());
}

void RevealState::reveal(double x) {
    if (!(x >= 0.0 && x <= 1.0)) throw InvalidArgument("weights must lie in [0, 1]");
    const Vertex w = next_vertex();
    x_[w] = x;
    const double threshold = 1.0 - x;
    for (const Vertex u : graph_->neighbors(w)) {
        --unrevealed_[u];
        auto& t = thresholds_[u];
        t.insert(std::upper_bound(t.begin(), t.end(), threshold), threshold);
    }
    ++prefix_;
}

// ------------------------------------------------------ conditional indicator

double cond_indicator_mean(const RevealState& state, Vertex v, std::uint32_t k) {
    const std::int64_t t = state.unrevealed_neighbors(v);
    const std::int64_t kk = k;
    if (state.revealed(v)) {
        const double xv = state.x(v);
        return binomial_point(xv, t, kk - state.exceedances(v, xv));
    }
    // x(v) still uniform: integrate over the pieces on which h(v, y) is constant
    const auto thresholds = state.thresholds(v);
    CompensatedSum total;
    double lo = 0.0;
    for (std::size_t i = 0; i <= thresholds.size(); ++i) {
        const double hi = i < thresholds.size() ? thresholds[i] : 1.0;
        total.add(binomial_segment_integral(lo, hi, t, kk - std::int64_t(i)));
        lo = hi;
    }
    return total.value();
}

StepResult martingale_step(RevealState& state, std::uint32_t j, double xj, std::uint32_t k) {
    if (j != state.prefix() + 1) {
        throw InvalidArgument("out-of-order reveal: step " + std::to_string(j) + " after prefix " +
                              std::to_string(state.prefix()));
    }
    const Vertex w = state.next_vertex();
    const auto nbrs = state.graph().neighbors(w);
    StepResult result;
    result.updated.reserve(nbrs.size() + 1);
    std::vector<double> before;
    before.reserve(nbrs.size() + 1);
    before.push_back(cond_indicator_mean(state, w, k));
    for (const Vertex u : nbrs) before.push_back(cond_indicator_mean(state, u, k));
    state.reveal(xj);
    CompensatedSum increment;
    for (std::size_t i = 0; i <= nbrs.size(); ++i) {
        const Vertex v = i == 0 ? w : nbrs[i - 1];
        const double after = cond_indicator_mean(state, v, k);
        increment.add(after - before[i]);
        result.updated.emplace_back(v, after);
    }
    result.increment = increment.value();
    return result;
}

// ----------------------------------------------------------- IncrementProfile

std::size_t IncrementProfile::Unrevealed::segment(double y) const {
    // number of interior cuts <= y
    const auto first = cuts.begin() + 1;
    const auto last = cuts.end() - 1;
    return static_cast<std::size_t>(std::upper_bound(first, last, y) - first);
}

double IncrementProfile::Unrevealed::change(double x, std::int64_t k) const {
    // After the reveal the new threshold sits at s = 1 - x: below s the
    // neighbor keeps its revealed-exceedance count, from s on it gains one.
    //   G0(s) = ∫_0^s p(y, t, k - h(y)) dy,  G1(s) = ∫_s^1 p(y, t, k - 1 - h(y)) dy
    // with ∫ p(y, t, h) dy = P[Bin(t+1, y) >= h+1] / (t+1).
    const double s = 1.0 - x;
    const std::size_t i = segment(s);
    const std::int64_t h0 = k - static_cast<std::int64_t>(i);
    const std::int64_t h1 = h0 - 1;
    const auto tails = binomial_upper_tail_pair(t + 1, s, h0);
    const double scale = 1.0 / double(t + 1);
    double g0 = g0_at[i];
    if (h0 >= 0 && h0 <= t) g0 += (tails.above - lo_tail[i]) * scale;
    double g1 = g1_at[i + 1];
    if (h1 >= 0 && h1 <= t) g1 += (hi_tail[i] - tails.at_least) * scale;
    return g0 + g1 - before;
}

double IncrementProfile::Unrevealed::change(const PowerTable& at_s, std::int64_t k) const {
    const double s = at_s.y();
    const std::size_t i = segment(s);
    const std::int64_t h0 = k - static_cast<std::int64_t>(i);
    const std::int64_t h1 = h0 - 1;
    const double above = at_s.upper_tail(t + 1, h0 + 1);
    const double scale = 1.0 / double(t + 1);
    double g0 = g0_at[i];
    if (h0 >= 0 && h0 <= t) g0 += (above - lo_tail[i]) * scale;
    double g1 = g1_at[i + 1];
    if (h1 >= 0 && h1 <= t) g1 += (hi_tail[i] - (above + at_s.point(t + 1, h0))) * scale;
    return g0 + g1 - before;
}

double IncrementProfile::Unrevealed::delta(double y, std::int64_t k) const {
    const auto h = static_cast<std::int64_t>(segment(y));
    return binomial_point(y, t, k - 1 - h) - binomial_point(y, t, k - h);
}

IncrementProfile::IncrementProfile(const RevealState& state, std::uint32_t k) : k_(k) {
    const Vertex w = state.next_vertex();
    const std::int64_t kk = k;
    own_t_ = state.unrevealed_neighbors(w);
    const auto own_thr = state.thresholds(w);
    own_thresholds_.assign(own_thr.begin(), own_thr.end());
    own_before_ = cond_indicator_mean(state, w, k);

    cuts_.push_back(0.0);
    for (const Vertex u : state.graph().neighbors(w)) {
        const std::int64_t t_after = std::int64_t(state.unrevealed_neighbors(u)) - 1;
        if (state.revealed(u)) {
            const double xu = state.x(u);
            const std::int64_t h = state.exceedances(u, xu);
            revealed_x_.push_back(xu);
            revealed_cut_.push_back(1.0 - xu);
            revealed_delta_.push_back(binomial_point(xu, t_after, kk - 1 - h) - binomial_point(xu, t_after, kk - h));
            cuts_.push_back(1.0 - xu);
            continue;
        }
        Unrevealed term;
        term.t = t_after;
        const auto thr = state.thresholds(u);
        term.cuts.reserve(thr.size() + 2);
        term.cuts.push_back(0.0);
        term.cuts.insert(term.cuts.end(), thr.begin(), thr.end());
        term.cuts.push_back(1.0);
        const std::size_t segments = term.cuts.size() - 1;
        term.g0_at.assign(segments + 1, 0.0);
        term.g1_at.assign(segments + 1, 0.0);
        for (std::size_t i = 0; i < segments; ++i) {
            term.g0_at[i + 1] = term.g0_at[i] + binomial_segment_integral(term.cuts[i], term.cuts[i + 1], term.t,
                                                                          kk - std::int64_t(i));
        }
        for (std::size_t i = segments; i-- > 0;) {
            term.g1_at[i] = term.g1_at[i + 1] + binomial_segment_integral(term.cuts[i], term.cuts[i + 1], term.t,
                                                                          kk - 1 - std::int64_t(i));
        }
        term.lo_tail.resize(segments);
        term.hi_tail.resize(segments);
        for (std::size_t i = 0; i < segments; ++i) {
            const std::int64_t h0 = kk - std::int64_t(i);
            term.lo_tail[i] = binomial_upper_tail(term.t + 1, term.cuts[i], h0 + 1);
            term.hi_tail[i] = binomial_upper_tail(term.t + 1, term.cuts[i + 1], h0);
        }
        term.before = cond_indicator_mean(state, u, k);
        unrevealed_.push_back(std::move(term));
    }
    cuts_.push_back(1.0);
    std::sort(cuts_.begin(), cuts_.end());
    max_trials_ = own_t_;
    for (const auto& term : unrevealed_) max_trials_ = std::max(max_trials_, term.t + 1);
}

IncrementProfile::Parts IncrementProfile::evaluate(double x) const {
    Parts parts;
    parts.revealed = revealed_part(x);
    if (max_trials_ > PowerTable::kMaxTrials) {
        parts.own = own(x);
        for (const auto& term : unrevealed_) {
            const double c = term.change(x, k_);
            parts.unrevealed += c;
            parts.unrevealed_sq += c * c;
        }
        return parts;
    }
    // table at s = 1 - x; its complements are powers of x
    const PowerTable at_s(1.0 - x, max_trials_);
    const auto h = static_cast<std::int64_t>(std::upper_bound(own_thresholds_.begin(), own_thresholds_.end(), x) -
                                             own_thresholds_.begin());
    const std::int64_t own_h = std::int64_t(k_) - h;
    parts.own = (own_h >= 0 && own_h <= own_t_ ? at_s.point(own_t_, own_t_ - own_h) : 0.0) - own_before_;
    for (const auto& term : unrevealed_) {
        const double c = term.change(at_s, k_);
        parts.unrevealed += c;
        parts.unrevealed_sq += c * c;
    }
    return parts;
}

double IncrementProfile::own(double x) const {
    const auto h = static_cast<std::int64_t>(std::upper_bound(own_thresholds_.begin(), own_thresholds_.end(), x) -
                                             own_thresholds_.begin());
    return binomial_point(x, own_t_, std::int64_t(k_) - h) - own_before_;
}

double IncrementProfile::revealed_part(double x) const {
    double sum = 0.0;
    for (std::size_t i = 0; i < revealed_delta_.size(); ++i)
        sum += revealed_delta_[i] * ((x >= revealed_cut_[i] ? 1.0 : 0.0) - revealed_x_[i]);
    return sum;
}

double IncrementProfile::unrevealed_part(double x) const {
    double sum = 0.0;
    for (const auto& term : unrevealed_) sum += term.change(x, k_);
    return sum;
}

double IncrementProfile::unrevealed_square_sum(double x) const {
    double sum = 0.0;
    for (const auto& term : unrevealed_) {
        const double c = term.change(x, k_);
        sum += c * c;
    }
    return sum;
}

std::vector<double> IncrementProfile::all_kinks() const {
    std::vector<double> cuts = cuts_;
    for (const auto& term : unrevealed_)
        for (std::size_t i = 1; i + 1 < term.cuts.size(); ++i) cuts.push_back(1.0 - term.cuts[i]);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    return cuts;
}

double IncrementProfile::a1_exact() const {
    std::vector<std::size_t> idx(revealed_cut_.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return revealed_cut_[a] < revealed_cut_[b]; });
    double level = 0.0;
    for (std::size_t i = 0; i < revealed_delta_.size(); ++i) level -= revealed_delta_[i] * revealed_x_[i];
    CompensatedSum total;
    double lo = 0.0;
    for (const std::size_t i : idx) {
        total.add((revealed_cut_[i] - lo) * level * level);
        lo = revealed_cut_[i];
        level += revealed_delta_[i];
    }
    total.add((1.0 - lo) * level * level);
    return total.value();
}

double IncrementProfile::a2_diagonal() const {
    CompensatedSum total;
    for (const auto& term : unrevealed_) {
        // delta^2 y (1-y) is a polynomial of degree 2t+2 on each piece
        const auto& rule = gauss_legendre(static_cast<std::size_t>(std::max<std::int64_t>(term.t, 0)) + 2);
        for (std::size_t i = 0; i + 1 < term.cuts.size(); ++i) {
            const double a = term.cuts[i];
            const double b = term.cuts[i + 1];
            if (!(b > a)) continue;
            const auto h = static_cast<std::int64_t>(i);
            const std::int64_t kk = k_;
            total.add(rule.integrate(a, b, [&](double y) {
                const double dl = binomial_point(y, term.t, kk - 1 - h) - binomial_point(y, term.t, kk - h);
                return dl * dl * y * (1.0 - y);
            }));
        }
    }
    return total.value();
}

double IncrementProfile::max_abs_delta() const {
    double worst = 0.0;
    for (const double dl : revealed_delta_) worst = std::max(worst, std::abs(dl));
    for (const auto& term : unrevealed_)
        for (int g = 0; g <= 64; ++g) worst = std::max(worst, std::abs(term.delta(g / 64.0, k_)));
    return worst;
}

// ------------------------------------------------------------- quadrature use

namespace {

void check_step(const RevealState& state, std::uint32_t j) {
    if (j != state.prefix() + 1) {
        throw InvalidArgument("step " + std::to_string(j) + " does not follow prefix " +
                              std::to_string(state.prefix()));
    }
}

std::vector<double> quadrature_cuts(const IncrementProfile& profile, const QuadratureSpec& quad) {
    return quad.split_all_kinks ? profile.all_kinks() : profile.breakpoints();
}

// Between all kinks the integrands are polynomials of degree <= 2d, which
// d+1 Gauss-Legendre nodes integrate exactly.
QuadratureSpec effective_spec(const RevealState& state, const QuadratureSpec& quad) {
    QuadratureSpec eff = quad;
    if (quad.split_all_kinks) eff.nodes = std::min<std::size_t>(quad.nodes, std::size_t{state.graph().d()} + 1);
    return eff;
}

void enforce(const QuadratureSpec& quad, const QuadratureResult& r, const char* what) {
    if (quad.strict && !r.converged) {
        char msg[160];
        std::snprintf(msg, sizeof msg, "%s: quadrature did not converge (estimated error %.3g, value %.6g)", what,
                      r.error_estimate, r.value);
        throw QuadratureError(msg, r.error_estimate);
    }
}

}  // namespace

QuadratureOutcome cond_sq_increment(const RevealState& state, std::uint32_t j, std::uint32_t k,
                                    const QuadratureSpec& quad) {
    check_step(state, j);
    const IncrementProfile profile(state, k);
    const auto cuts = quadrature_cuts(profile, quad);
    const auto r = composite_integrate(std::span<const double>(cuts), effective_spec(state, quad), [&](double x) {
        const double y = profile.evaluate(x).total();
        return y * y;
    });
    enforce(quad, r, "E[Y_j^2 | F_{j-1}]");
    return {r.value, r.error_estimate, r.converged};
}

Decomposition decompose_increment(const RevealState& state, std::uint32_t j, std::uint32_t k,
                                  const QuadratureSpec& quad) {
    check_step(state, j);
    const IncrementProfile profile(state, k);
    const auto cuts = quadrature_cuts(profile, quad);
    const std::span<const double> pieces(cuts);
    const auto eff = effective_spec(state, quad);
    const auto sq = composite_integrate(pieces, eff, [&](double x) {
        const double y = profile.evaluate(x).total();
        return y * y;
    });
    enforce(quad, sq, "E[Y_j^2 | F_{j-1}]");
    // A_2 = E_x[(sum_u m_u)^2 - sum_u m_u^2] + sum_u E[delta_u^2 (1[x >= 1-x_u] - x_u)^2],
    // the last expectation reducing to ∫ delta_u(y)^2 y (1-y) dy.
    const auto cross = composite_integrate(pieces, eff, [&](double x) {
        const auto p = profile.evaluate(x);
        return p.unrevealed * p.unrevealed - p.unrevealed_sq;
    });
    const auto own_sq = composite_integrate(pieces, eff, [&](double x) {
        const double o = profile.own(x);
        return o * o;
    });
    const auto neighbor_sq = composite_integrate(pieces, eff, [&](double x) {
        const auto p = profile.evaluate(x);
        const double nb = p.revealed + p.unrevealed;
        return nb * nb;
    });
    Decomposition out;
    out.sq_increment = sq.value;
    out.a1 = profile.a1_exact();
    out.a2 = cross.value + profile.a2_diagonal();
    out.own_sq = own_sq.value;
    out.neighbor_sq = neighbor_sq.value;
    out.error_estimate = sq.error_estimate + cross.error_estimate;
    out.max_abs_delta = profile.max_abs_delta();
    return out;
}

// ------------------------------------------------------------------ run_trace

double MartingaleTrace::max_abs_increment() const {
    double worst = 0.0;
    for (const double y : y_values) worst = std::max(worst, std::abs(y));
    return worst;
}

MartingaleTrace run_trace(const Graph& g, std::span<const Vertex> order, std::span<const double> x, std::uint32_t k,
                          const QuadratureSpec& quad, const TraceOptions& options) {
    if (x.size() != g.n()) throw InvalidArgument("run_trace: weight vector size does not match the graph");
    if (k > g.d()) throw InvalidArgument("run_trace: k above d");
    RevealState state(g, std::vector<Vertex>(order.begin(), order.end()));
    MartingaleTrace trace;
    trace.k = k;
    trace.order.assign(order.begin(), order.end());
    trace.quadrature = quad;
    const std::uint32_t n = g.n();

    std::vector<double> current(n);
    for (Vertex v = 0; v < n; ++v) current[v] = cond_indicator_mean(state, v, k);
    trace.x_values.reserve(n + 1);
    trace.x_values.push_back(compensated_sum(current));
    trace.y_values.reserve(n);

    CompensatedSum m_total;
    for (std::uint32_t j = 1; j <= n; ++j) {
        if (options.sq_increments || options.decompose) {
            double sq = 0.0;
            double err = 0.0;
            bool converged = true;
            if (options.decompose) {
                const auto dec = decompose_increment(state, j, k, quad);
                sq = dec.sq_increment;
                err = dec.error_estimate;
                converged = err <= std::max(quad.abs_tol, quad.rel_tol * std::abs(sq));
                trace.a1.push_back(dec.a1);
                trace.a2.push_back(dec.a2);
            } else {
                const auto r = cond_sq_increment(state, j, k, quad);
                sq = r.value;
                err = r.error_estimate;
                converged = r.converged;
            }
            trace.max_quadrature_error = std::max(trace.max_quadrature_error, err);
            if (!converged) ++trace.unconverged_steps;
            trace.sq_increments.push_back(sq);
            m_total.add(sq);
            trace.m_running.push_back(m_total.value());
        }
        const Vertex w = state.next_vertex();
        const auto step = martingale_step(state, j, x[w], k);
        for (const auto& [v, value] : step.updated) current[v] = value;
        trace.y_values.push_back(step.increment);
        trace.x_values.push_back(compensated_sum(current));
    }
    return trace;
}

double bernstein_tail(double z, double a, double L) {
    if (!(a > 0.0)) throw InvalidArgument("bernstein_tail: cap a must be positive");
    if (!(L > 0.0)) throw InvalidArgument("bernstein_tail: proxy bound L must be positive");
    if (!(z >= 0.0)) throw InvalidArgument("bernstein_tail: deviation z must be nonnegative");
    const double r = z / a;
    return std::exp(-0.5 * r * r / (L / (a * a) + r));
}

void write_trace_csv(const MartingaleTrace& trace, std::ostream& out) {
    out << "j,X_j,Y_j,sq_increment,M_j\n";
    char line[160];
    for (std::size_t j = 0; j < trace.x_values.size(); ++j) {
        const double y = j == 0 ? 0.0 : trace.y_values[j - 1];
        const double sq = (j == 0 || trace.sq_increments.empty()) ? 0.0 : trace.sq_increments[j - 1];
        const double m = (j == 0 || trace.m_running.empty()) ? 0.0 : trace.m_running[j - 1];
        std::snprintf(line, sizeof line, "%zu,%.17g,%.17g,%.17g,%.17g\n", j, trace.x_values[j], y, sq, m);
        out << line;
    }
}

}  // namespace irsub
