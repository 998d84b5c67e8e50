#pragma once

#include <cmath>

namespace guesswork::detail {

// Neumaier-compensated accumulator: keeps long sums accurate to ~1 ulp of
// the result regardless of term count or ordering.
class CompensatedSum {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

}  // namespace guesswork::detail
