#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "irsub/binomial.hpp"
#include "irsub/graph.hpp"
#include "irsub/quadrature.hpp"

namespace irsub {

/// Vertex-exposure filtration: weights are revealed one vertex at a time in
/// the arrival order `order`. After `prefix()` reveals, each vertex u keeps
///   t(u)          number of neighbors not yet revealed,
///   thresholds(u) sorted {1 - x(w) : w revealed neighbor of u},
/// so the count of revealed neighbors w with x(w) >= 1 - y is the number of
/// thresholds <= y.
class RevealState {
public:
    RevealState(const Graph& g, std::vector<Vertex> order);

    const Graph& graph() const noexcept { return *graph_; }
    std::span<const Vertex> order() const noexcept { return order_; }
    std::uint32_t prefix() const noexcept { return prefix_; }
    bool complete() const noexcept { return prefix_ == order_.size(); }
    /// Vertex revealed by the next call to reveal().
    Vertex next_vertex() const;
    std::uint32_t position(Vertex v) const noexcept { return position_[v]; }
    bool revealed(Vertex v) const noexcept { return position_[v] < prefix_; }
    /// Weight of a revealed vertex.
    double x(Vertex v) const;
    std::uint32_t unrevealed_neighbors(Vertex v) const noexcept { return unrevealed_[v]; }
    std::span<const double> thresholds(Vertex v) const noexcept { return thresholds_[v]; }
    /// #{revealed neighbors w : x(w) >= 1 - y}.
    std::uint32_t exceedances(Vertex v, double y) const;

    void reveal(double x);

private:
    const Graph* graph_;
    std::vector<Vertex> order_;
    std::vector<std::uint32_t> position_;
    std::uint32_t prefix_ = 0;
    std::vector<double> x_;
    std::vector<std::uint32_t> unrevealed_;
    std::vector<std::vector<double>> thresholds_;
};

/// E[I_v | F_j] for the event deg_H(v) = k, given the reveals so far.
double cond_indicator_mean(const RevealState& state, Vertex v, std::uint32_t k);

struct StepResult {
    double increment = 0.0;
    /// (v, E[I_v | F_j]) for every v in N+(revealed vertex), after the reveal.
    std::vector<std::pair<Vertex, double>> updated;
};

/// Reveals x(pi(j)) = xj and returns Y_j, the change of E[X | F] summed over
/// the closed neighborhood of pi(j). `j` is 1-based and must equal prefix+1.
StepResult martingale_step(RevealState& state, std::uint32_t j, double xj, std::uint32_t k);

/// Y_j as a function of the candidate weight x of the next vertex, built
/// from the state before the reveal. Split into the vertex's own term, the
/// revealed-neighbor terms (step functions of x) and the unrevealed-neighbor
/// terms (conditional expectations over the neighbor's weight).
class IncrementProfile {
public:
    IncrementProfile(const RevealState& state, std::uint32_t k);

    /// All pieces of Y_j(x) from one evaluation.
    struct Parts {
        double own = 0.0;
        double revealed = 0.0;
        double unrevealed = 0.0;
        double unrevealed_sq = 0.0;  // sum of squares of the unrevealed terms
        double total() const { return own + revealed + unrevealed; }
    };
    Parts evaluate(double x) const;

    double operator()(double x) const { return evaluate(x).total(); }
    double own(double x) const;
    double revealed_part(double x) const;
    double unrevealed_part(double x) const;
    /// Sum of squares of the individual unrevealed-neighbor terms.
    double unrevealed_square_sum(double x) const;

    /// {0, 1} plus 1 - x(u) for every revealed neighbor u, sorted.
    const std::vector<double>& breakpoints() const noexcept { return cuts_; }
    /// Breakpoints plus the kinks of the unrevealed-neighbor terms.
    std::vector<double> all_kinks() const;

    /// delta_k(j, u) for revealed neighbors, in neighbor order.
    const std::vector<double>& revealed_deltas() const noexcept { return revealed_delta_; }

    /// ∫_0^1 (sum over revealed u of delta_u (1[x >= 1-x(u)] - x(u)))^2 dx, exact.
    double a1_exact() const;
    /// sum over unrevealed u of ∫_0^1 delta_u(y)^2 y (1-y) dy.
    double a2_diagonal() const;
    /// Largest |delta_k(j,u)| seen over revealed and (on a grid) unrevealed u.
    double max_abs_delta() const;

private:
    struct Unrevealed {
        std::int64_t t = 0;         // t(u) - 1, unrevealed neighbors left after the reveal
        std::vector<double> cuts;   // 0, sorted thresholds of u, 1
        std::vector<double> g0_at;  // ∫_0^{cuts[i]} p(y, t, k - h(y)) dy
        std::vector<double> g1_at;  // ∫_{cuts[i]}^1 p(y, t, k - 1 - h(y)) dy
        std::vector<double> lo_tail;  // P[Bin(t+1, cuts[i]) >= k-i+1]
        std::vector<double> hi_tail;  // P[Bin(t+1, cuts[i+1]) >= k-i]
        double before = 0.0;          // E[I_u | F_{j-1}]

        std::size_t segment(double y) const;
        double change(double x, std::int64_t k) const;
        /// Same, with binomial terms read from a power table at s = 1 - x.
        double change(const PowerTable& at_s, std::int64_t k) const;
        double delta(double y, std::int64_t k) const;
    };

    std::uint32_t k_;
    // own term
    std::int64_t own_t_ = 0;
    std::vector<double> own_thresholds_;
    double own_before_ = 0.0;
    // revealed neighbors
    std::vector<double> revealed_cut_;
    std::vector<double> revealed_x_;
    std::vector<double> revealed_delta_;
    std::vector<Unrevealed> unrevealed_;
    std::vector<double> cuts_;
    std::int64_t max_trials_ = 0;
};

struct QuadratureOutcome {
    double value = 0.0;
    double error_estimate = 0.0;
    bool converged = true;
};

/// E[Y_j^2 | F_{j-1}] = ∫_0^1 Y_j(x)^2 dx by composite Gauss-Legendre on the
/// revealed-neighbor breakpoints. Throws QuadratureError when spec.strict and
/// the node-doubling estimate misses the tolerance.
QuadratureOutcome cond_sq_increment(const RevealState& state, std::uint32_t j, std::uint32_t k,
                                    const QuadratureSpec& quad = {});

struct Decomposition {
    double a1 = 0.0;
    double a2 = 0.0;
    double sq_increment = 0.0;
    double error_estimate = 0.0;
    double max_abs_delta = 0.0;
    /// ∫ own(x)^2 dx: the revealed vertex's own indicator change.
    double own_sq = 0.0;
    /// ∫ (revealed(x) + unrevealed(x))^2 dx: the neighbor-only part of Y_j.
    double neighbor_sq = 0.0;
};

/// A_1(j) over revealed neighbors (exact, piecewise constant) and A_2(j) over
/// unrevealed neighbors, alongside E[Y_j^2 | F_{j-1}] on the same nodes.
Decomposition decompose_increment(const RevealState& state, std::uint32_t j, std::uint32_t k,
                                  const QuadratureSpec& quad = {});

struct TraceOptions {
    bool sq_increments = true;
    bool decompose = false;
};

struct MartingaleTrace {
    std::uint32_t k = 0;
    std::vector<Vertex> order;
    std::vector<double> x_values;       // X_0..X_n
    std::vector<double> y_values;       // Y_1..Y_n
    std::vector<double> sq_increments;  // E[Y_j^2 | F_{j-1}], j = 1..n
    std::vector<double> m_running;      // M_1..M_n
    std::vector<double> a1;             // filled when decompose
    std::vector<double> a2;
    QuadratureSpec quadrature;
    double max_quadrature_error = 0.0;
    std::uint32_t unconverged_steps = 0;

    double max_abs_increment() const;
    double variance_proxy() const { return m_running.empty() ? 0.0 : m_running.back(); }
};

MartingaleTrace run_trace(const Graph& g, std::span<const Vertex> order, std::span<const double> x,
                          std::uint32_t k, const QuadratureSpec& quad = {}, const TraceOptions& options = {});

/// First term of the martingale Bernstein bound:
/// exp(-(1/2) (z/a)^2 / (L/a^2 + z/a)).
double bernstein_tail(double z, double a, double L);

/// One row per j (0..n): j, X_j, Y_j, sq_increment, M_j; j = 0 has zeros.
void write_trace_csv(const MartingaleTrace& trace, std::ostream& out);

}  // namespace irsub
