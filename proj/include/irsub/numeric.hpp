#pragma once

#include <cmath>
#include <span>
#include <vector>

namespace irsub {

/// Neumaier compensated summation.
class CompensatedSum {
public:
    void add(double value) {
        const double t = sum_ + value;
        if (std::abs(sum_) >= std::abs(value))
            compensation_ += (sum_ - t) + value;
        else
            compensation_ += (value - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + compensation_; }

private:
    double sum_ = 0.0;
    double compensation_ = 0.0;
};

inline double compensated_sum(std::span<const double> values) {
    CompensatedSum s;
    for (const double v : values) s.add(v);
    return s.value();
}

struct SampleSummary {
    std::size_t count = 0;
    double mean = 0.0;
    /// Bessel-corrected; NaN when count < 2.
    double variance = 0.0;
    double min = 0.0;
    double max = 0.0;
};

/// Two-pass summary with compensated sums; deterministic in input order.
SampleSummary summarize(std::span<const double> values);

/// Linear-interpolation quantile (type 7) of an unsorted sample.
double quantile(std::vector<double> values, double q);

}  // namespace irsub
