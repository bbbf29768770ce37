#pragma once

#include <cmath>

#include "sliceq/quaternion.hpp"

namespace sliceq {

// Element of H (x) R_2 where R_2 is the real Clifford algebra with units
// e1, e2, e12 = e1*e2, e1^2 = e2^2 = -1. Quaternion coefficients live in
// the tensor factor and commute with the Clifford units.
struct CliffordQuat {
    Quaternion f0, f1, f2, f12;

    constexpr CliffordQuat() = default;
    constexpr CliffordQuat(Quaternion a, Quaternion b, Quaternion c, Quaternion d)
        : f0(a), f1(b), f2(c), f12(d) {}

    constexpr CliffordQuat operator+(const CliffordQuat& o) const {
        return {f0 + o.f0, f1 + o.f1, f2 + o.f2, f12 + o.f12};
    }
    constexpr CliffordQuat operator-(const CliffordQuat& o) const {
        return {f0 - o.f0, f1 - o.f1, f2 - o.f2, f12 - o.f12};
    }
    constexpr CliffordQuat operator*(double s) const {
        return {f0 * s, f1 * s, f2 * s, f12 * s};
    }
    constexpr CliffordQuat operator/(double s) const {
        return {f0 / s, f1 / s, f2 / s, f12 / s};
    }
    CliffordQuat& operator+=(const CliffordQuat& o) { return *this = *this + o; }

    double norm() const {
        return std::sqrt(f0.norm_sq() + f1.norm_sq() + f2.norm_sq() + f12.norm_sq());
    }
};

// e1 * F.  e1*1 = e1, e1*e1 = -1, e1*e2 = e12, e1*e12 = -e2.
inline constexpr CliffordQuat e1_left_mul(const CliffordQuat& f) {
    return {-f.f1, f.f0, -f.f12, f.f2};
}

// F * e2.  1*e2 = e2, e1*e2 = e12, e2*e2 = -1, e12*e2 = -e1.
// Right multiplication: this is the asymmetry that makes the second
// Cauchy-Riemann operator different from the first.
inline constexpr CliffordQuat e2_right_mul(const CliffordQuat& f) {
    return {-f.f2, -f.f12, f.f0, f.f1};
}

} // namespace sliceq
