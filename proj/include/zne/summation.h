#pragma once

#include <cmath>
#include <span>

namespace zne {

/// Neumaier-compensated accumulator. Extrapolation sums cancel to many digits
/// (weights of order 1e2 producing results near 1e-6), so plain summation loses them.
class CompensatedSum {
public:
    void add(double v) {
        double t = sum_ + v;
        if (std::abs(sum_) >= std::abs(v)) {
            comp_ += (sum_ - t) + v;
        } else {
            comp_ += (v - t) + sum_;
        }
        sum_ = t;
    }

    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

inline double compensated_dot(std::span<const double> a, std::span<const double> b) {
    // Products are split exactly with fma so only the final rounding remains.
    CompensatedSum acc;
    CompensatedSum low;
    for (size_t i = 0; i < a.size(); i++) {
        double p = a[i] * b[i];
        acc.add(p);
        low.add(std::fma(a[i], b[i], -p));
    }
    return acc.value() + low.value();
}

}  // namespace zne
