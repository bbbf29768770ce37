#pragma once

#include <complex>
#include <functional>
#include <utility>
#include <vector>

#include "sliceq/clifford.hpp"
#include "sliceq/quaternion.hpp"

namespace sliceq {

// Point of D in C^2, kept as four reals: z1 = a1 + i b1, z2 = a2 + i b2.
struct ComplexPoint2 {
    double a1 = 0, b1 = 0, a2 = 0, b2 = 0;

    std::complex<double> z1() const { return {a1, b1}; }
    std::complex<double> z2() const { return {a2, b2}; }
    ComplexPoint2 conj1() const { return {a1, -b1, a2, b2}; }
    ComplexPoint2 conj2() const { return {a1, b1, a2, -b2}; }
};

// Axis-aligned box in (a1,b1,a2,b2)-space, symmetric under b_h -> -b_h,
// so conjugation invariance holds by construction.
struct StemDomain {
    double a1_lo = -1, a1_hi = 1;
    double b1_max = 1;
    double a2_lo = -1, a2_hi = 1;
    double b2_max = 1;

    bool contains(const ComplexPoint2& p) const {
        return p.a1 >= a1_lo && p.a1 <= a1_hi && std::abs(p.b1) <= b1_max &&
               p.a2 >= a2_lo && p.a2 <= a2_hi && std::abs(p.b2) <= b2_max;
    }
};

// A stem function as an evaluation oracle. Oracles must be pure.
struct StemOracle {
    std::function<CliffordQuat(const ComplexPoint2&)> eval;
    StemDomain domain;
};

// Exact polynomial stem: the Clifford-valued lift of an ordered polynomial
// sum z1^h z2^k c. Also the JSON-facing form ({h,k,coeff} triples).
struct PolyStemTerm {
    int h = 0;
    int k = 0;
    Quaternion coeff;
};

struct PolyStem {
    std::vector<PolyStemTerm> terms;
    StemDomain domain;

    CliffordQuat eval(const ComplexPoint2& p) const;
    StemOracle to_oracle() const;
};

class OrderedSeries; // fwd (series.hpp)

// Quaternionic point of the circular set, with its per-variable splits.
struct SlicePoint {
    Quaternion x1, x2;
    SliceDecomposition s1, s2;

    SlicePoint(const Quaternion& q1, const Quaternion& q2)
        : x1(q1), x2(q2), s1(split(q1)), s2(split(q2)) {}

    ComplexPoint2 complex_point() const { return {s1.alpha, s1.beta, s2.alpha, s2.beta}; }
};

// Max deviation from the even/odd symmetry pattern of the four components
// under conjugation of each variable, over seeded random samples of D.
double parity_residual(const StemOracle& stem, int samples, std::uint64_t seed);

// F0 + J1 F1 + J2 F2 + J1 J2 F12 at the complexified point.
Quaternion slice_eval(const StemOracle& stem, const SlicePoint& x);

// Central-difference norms of the two Cauchy-Riemann residuals
// dbar_1 F = (dF/da1 + e1 dF/db1)/2 and dbar_2 F = (dF/da2 + (dF/db2) e2)/2.
std::pair<double, double> dbar_residual(const StemOracle& stem, const ComplexPoint2& at,
                                        double h_step);

using SurfaceMap = std::function<std::pair<Quaternion, Quaternion>(const Quaternion&,
                                                                   const Quaternion&)>;

// Regular extension by the 16-term representation formula: rebuilds a slice
// function anywhere on H^2 from its values on L_{I1} x L_{I2}. For real
// components of x the formula degenerates with J_h taken equal to I_h.
std::pair<Quaternion, Quaternion> represent_extend(const SurfaceMap& f,
                                                   const Quaternion& i1,
                                                   const Quaternion& i2,
                                                   const SlicePoint& x);

} // namespace sliceq
