#pragma once

#include <cstdint>

namespace irsub {

/// p(x, t, h) = C(t, h) x^h (1-x)^(t-h); zero when h < 0 or h > t.
/// Large t is evaluated in log space.
double binomial_point(double x, std::int64_t t, std::int64_t h);

/// P[Bin(trials, s) >= m] by summing pmf terms (the shorter side).
/// Intended for small `trials`; exact enough for trials <= 60.
double binomial_upper_tail_direct(std::int64_t trials, double s, std::int64_t m);

/// Same quantity through the regularized incomplete beta I_s(m, trials-m+1).
double binomial_upper_tail_beta(std::int64_t trials, double s, std::int64_t m);

/// Dispatches to the direct path for trials <= kDirectTailLimit + 1,
/// the incomplete-beta path otherwise.
double binomial_upper_tail(std::int64_t trials, double s, std::int64_t m);

inline constexpr std::int64_t kDirectTailLimit = 30;

/// {P[Bin >= m], P[Bin >= m+1]} from one pmf pass (or one ibeta call).
struct TailPair {
    double at_least = 0.0;
    double above = 0.0;
};
TailPair binomial_upper_tail_pair(std::int64_t trials, double s, std::int64_t m);

/// Powers y^i and (1-y)^i for one evaluation point, shared by the many
/// binomial terms a quadrature node needs. Valid for t <= kMaxTrials.
class PowerTable {
public:
    static constexpr std::int64_t kMaxTrials = 62;

    PowerTable(double y, std::int64_t max_trials);

    double y() const noexcept { return y_; }
    /// p(y, t, h) with the zero convention.
    double point(std::int64_t t, std::int64_t h) const;
    /// P[Bin(trials, y) >= m].
    double upper_tail(std::int64_t trials, std::int64_t m) const;

private:
    double y_;
    double pow_[kMaxTrials + 2];
    double comp_[kMaxTrials + 2];
};

/// ∫_a^b p(y, t, h) dy = (I_b(h+1, t-h+1) - I_a(h+1, t-h+1)) / (t+1).
/// Throws InvalidArgument when a > b or the interval leaves [0, 1].
double binomial_segment_integral(double a, double b, std::int64_t t, std::int64_t h);

}  // namespace irsub
