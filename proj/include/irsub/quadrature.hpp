#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace irsub {

/// Gauss-Legendre rule on [-1, 1], nodes ascending.
struct GaussLegendreRule {
    std::vector<double> nodes;
    std::vector<double> weights;

    std::size_t size() const noexcept { return nodes.size(); }

    /// ∫_a^b f via the affine map of the rule.
    template <typename F>
    double integrate(double a, double b, F&& f) const {
        const double half = 0.5 * (b - a);
        const double mid = 0.5 * (a + b);
        double sum = 0.0;
        for (std::size_t i = 0; i < nodes.size(); ++i) sum += weights[i] * f(mid + half * nodes[i]);
        return sum * half;
    }
};

/// Rule with `points` nodes (Newton iteration on P_n); cached per size.
const GaussLegendreRule& gauss_legendre(std::size_t points);

/// User-facing quadrature settings for the martingale module.
struct QuadratureSpec {
    std::size_t nodes = 32;
    double rel_tol = 1e-6;
    double abs_tol = 1e-12;
    /// Throw QuadratureError instead of recording the achieved error.
    bool strict = false;
    /// Also cut at the kinks of the unrevealed-neighbor terms. Every piece is
    /// then polynomial and the rule is capped at d+1 nodes (already exact).
    /// Off: only the revealed-neighbor breakpoints, `nodes` per piece.
    bool split_all_kinks = true;
};

struct QuadratureResult {
    double value = 0.0;
    /// |I(2m nodes) - I(m nodes)| summed over pieces.
    double error_estimate = 0.0;
    bool converged = true;
};

/// Composite rule over the sorted breakpoints `cuts` (first = a, last = b):
/// each piece is integrated with `spec.nodes` and with twice as many nodes,
/// and the finer value is returned.
template <typename F>
QuadratureResult composite_integrate(std::span<const double> cuts, const QuadratureSpec& spec, F&& f) {
    const auto& coarse = gauss_legendre(spec.nodes);
    const auto& fine = gauss_legendre(2 * spec.nodes);
    QuadratureResult r;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double a = cuts[i];
        const double b = cuts[i + 1];
        if (!(b > a)) continue;
        const double ic = coarse.integrate(a, b, f);
        const double iff = fine.integrate(a, b, f);
        r.value += iff;
        r.error_estimate += std::abs(iff - ic);
    }
    r.converged = r.error_estimate <= std::max(spec.abs_tol, spec.rel_tol * std::abs(r.value));
    return r;
}

}  // namespace irsub
