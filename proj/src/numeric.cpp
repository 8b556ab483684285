#include "irsub/numeric.hpp"

#include <algorithm>
#include <limits>

#include "irsub/error.hpp"

namespace irsub {

SampleSummary summarize(std::span<const double> values) {
    SampleSummary s;
    s.count = values.size();
    if (values.empty()) {
        s.mean = s.variance = s.min = s.max = std::numeric_limits<double>::quiet_NaN();
        return s;
    }
    s.mean = compensated_sum(values) / double(values.size());
    CompensatedSum squares;
    for (const double v : values) squares.add((v - s.mean) * (v - s.mean));
    s.variance = values.size() < 2 ? std::numeric_limits<double>::quiet_NaN()
                                   : squares.value() / double(values.size() - 1);
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    s.min = *lo;
    s.max = *hi;
    return s;
}

double quantile(std::vector<double> values, double q) {
    if (values.empty()) throw InvalidArgument("quantile of an empty sample");
    if (!(q >= 0.0 && q <= 1.0)) throw InvalidArgument("quantile level must be in [0, 1]");
    std::sort(values.begin(), values.end());
    const double pos = q * double(values.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, values.size() - 1);
    const double frac = pos - double(lo);
    return values[lo] + frac * (values[hi] - values[lo]);
}

}  // namespace irsub
