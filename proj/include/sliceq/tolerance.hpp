#pragma once

#include <algorithm>
#include <cmath>

namespace sliceq {

// Absolute-plus-relative comparison used throughout the library.
// Norms under iteration span several orders of magnitude, so a pure
// absolute or pure relative test is too brittle.
struct Tolerance {
    double atol = 1e-12;
    double rtol = 1e-10;

    bool close(double a, double b) const {
        return std::abs(a - b) <= atol + rtol * std::max(std::abs(a), std::abs(b));
    }
    bool near_zero(double a, double scale = 1.0) const {
        return std::abs(a) <= atol + rtol * std::abs(scale);
    }
};

} // namespace sliceq
