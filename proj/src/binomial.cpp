#include "irsub/binomial.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include <boost/math/special_functions/beta.hpp>

#include "irsub/error.hpp"

namespace irsub {

namespace {

constexpr int kChooseTable = 64;

// choose[t][h] in double; exact through t = 56, correctly rounded above.
const std::array<std::array<double, kChooseTable + 1>, kChooseTable + 1>& choose_table() {
    static const auto table = [] {
        std::array<std::array<double, kChooseTable + 1>, kChooseTable + 1> c{};
        for (int t = 0; t <= kChooseTable; ++t) {
            c[t][0] = 1.0;
            for (int h = 1; h <= t; ++h) c[t][h] = c[t - 1][h - 1] + (h < t ? c[t - 1][h] : 0.0);
        }
        return c;
    }();
    return table;
}

}  // namespace

double binomial_point(double x, std::int64_t t, std::int64_t h) {
    if (t < 0 || h < 0 || h > t) return 0.0;
    if (x <= 0.0) return h == 0 ? 1.0 : 0.0;
    if (x >= 1.0) return h == t ? 1.0 : 0.0;
    if (t <= kChooseTable) {
        return choose_table()[t][h] * std::pow(x, double(h)) * std::pow(1.0 - x, double(t - h));
    }
    const double log_choose = std::lgamma(double(t) + 1) - std::lgamma(double(h) + 1) - std::lgamma(double(t - h) + 1);
    return std::exp(log_choose + double(h) * std::log(x) + double(t - h) * std::log1p(-x));
}

namespace {

// pmf of Bin(trials, s) by the ratio recurrence, started from the end that
// cannot underflow. Caller guarantees 0 < s < 1.
void binomial_pmf(std::int64_t trials, double s, double* pmf) {
    const double odds = s / (1.0 - s);
    if (s <= 0.5) {
        pmf[0] = std::pow(1.0 - s, double(trials));
        for (std::int64_t i = 0; i < trials; ++i) pmf[i + 1] = pmf[i] * double(trials - i) / double(i + 1) * odds;
    } else {
        pmf[trials] = std::pow(s, double(trials));
        for (std::int64_t i = trials; i > 0; --i) pmf[i - 1] = pmf[i] * double(i) / double(trials - i + 1) / odds;
    }
}

// Sum of pmf[m..trials] through whichever side is shorter in mass.
double tail_from_pmf(const double* pmf, std::int64_t trials, std::int64_t m) {
    if (m <= 0) return 1.0;
    if (m > trials) return 0.0;
    double upper = 0.0;
    double lower = 0.0;
    for (std::int64_t i = m; i <= trials; ++i) upper += pmf[i];
    for (std::int64_t i = 0; i < m; ++i) lower += pmf[i];
    return upper <= lower ? upper : 1.0 - lower;
}

constexpr std::int64_t kStackPmf = 128;

}  // namespace

double binomial_upper_tail_direct(std::int64_t trials, double s, std::int64_t m) {
    if (m <= 0) return 1.0;
    if (m > trials) return 0.0;
    if (s <= 0.0) return 0.0;
    if (s >= 1.0) return 1.0;
    if (trials < kStackPmf) {
        double pmf[kStackPmf];
        binomial_pmf(trials, s, pmf);
        return tail_from_pmf(pmf, trials, m);
    }
    std::vector<double> pmf(static_cast<std::size_t>(trials) + 1);
    binomial_pmf(trials, s, pmf.data());
    return tail_from_pmf(pmf.data(), trials, m);
}

TailPair binomial_upper_tail_pair(std::int64_t trials, double s, std::int64_t m) {
    if (trials > kDirectTailLimit + 1 || s <= 0.0 || s >= 1.0 || m > trials || m < 0) {
        const double above = binomial_upper_tail(trials, s, m + 1);
        return {above + binomial_point(s, trials, m), above};
    }
    double pmf[kStackPmf];
    binomial_pmf(trials, s, pmf);
    const double above = tail_from_pmf(pmf, trials, m + 1);
    const double at_least = tail_from_pmf(pmf, trials, m);
    return {at_least, above};
}

double binomial_upper_tail_beta(std::int64_t trials, double s, std::int64_t m) {
    if (m <= 0) return 1.0;
    if (m > trials) return 0.0;
    if (s <= 0.0) return 0.0;
    if (s >= 1.0) return 1.0;
    return boost::math::ibeta(double(m), double(trials - m + 1), s);
}

double binomial_upper_tail(std::int64_t trials, double s, std::int64_t m) {
    return trials <= kDirectTailLimit + 1 ? binomial_upper_tail_direct(trials, s, m)
                                          : binomial_upper_tail_beta(trials, s, m);
}

PowerTable::PowerTable(double y, std::int64_t max_trials) : y_(y) {
    if (max_trials > kMaxTrials + 1 || max_trials < 0) throw InvalidArgument("PowerTable: too many trials");
    pow_[0] = 1.0;
    comp_[0] = 1.0;
    const double c = 1.0 - y;
    for (std::int64_t i = 1; i <= max_trials; ++i) {
        pow_[i] = pow_[i - 1] * y;
        comp_[i] = comp_[i - 1] * c;
    }
}

double PowerTable::point(std::int64_t t, std::int64_t h) const {
    if (t < 0 || h < 0 || h > t) return 0.0;
    return choose_table()[t][h] * pow_[h] * comp_[t - h];
}

double PowerTable::upper_tail(std::int64_t trials, std::int64_t m) const {
    if (m <= 0) return 1.0;
    if (m > trials) return 0.0;
    const auto& row = choose_table()[trials];
    double sum = 0.0;
    if (2 * m > trials) {
        for (std::int64_t i = m; i <= trials; ++i) sum += row[i] * pow_[i] * comp_[trials - i];
        return sum;
    }
    for (std::int64_t i = 0; i < m; ++i) sum += row[i] * pow_[i] * comp_[trials - i];
    return 1.0 - sum;
}

double binomial_segment_integral(double a, double b, std::int64_t t, std::int64_t h) {
    if (!(a <= b)) throw InvalidArgument("binomial_segment_integral: need a <= b");
    if (a < 0.0 || b > 1.0) throw InvalidArgument("binomial_segment_integral: interval outside [0, 1]");
    if (t < 0 || h < 0 || h > t || a == b) return 0.0;
    const double hi = binomial_upper_tail(t + 1, b, h + 1);
    const double lo = binomial_upper_tail(t + 1, a, h + 1);
    return std::max(0.0, hi - lo) / double(t + 1);
}

}  // namespace irsub
