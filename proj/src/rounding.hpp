#pragma once

#include <algorithm>
#include <cmath>

namespace guesswork::detail {

// ceil with a 1e-12 snap window: values that close to an integer are taken
// as that integer. The window is tight enough that the worst-case Kraft
// excess it can introduce, sum_x Q(x)*(2^1e-12 - 1), stays below the 1e-12
// Kraft tolerance.
inline int snapped_ceil_bits(double v) {
    const double r = std::round(v);
    const double raw = (std::abs(v - r) <= 1e-12) ? r : std::ceil(v);
    return std::max(1, static_cast<int>(raw));
}

}  // namespace guesswork::detail
