#include "sliceq/stem.hpp"

#include <cmath>
#include <stdexcept>

#include "sliceq/rng.hpp"

namespace sliceq {

namespace {

// Integer power by repeated multiplication: keeps conjugation symmetry
// bit-exact, which std::pow's exp/log route does not guarantee.
std::complex<double> cpow_int(std::complex<double> z, int n) {
    std::complex<double> acc(1.0, 0.0);
    for (int i = 0; i < n; ++i) acc *= z;
    return acc;
}

} // namespace

CliffordQuat PolyStem::eval(const ComplexPoint2& p) const {
    CliffordQuat acc;
    for (const auto& t : terms) {
        // z1^h = P + iQ, z2^k = R + iS; the stem of z1^h z2^k c is
        // (P + e1 Q)(R + e2 S) c with the quaternion c in the tensor factor.
        const std::complex<double> u = cpow_int(p.z1(), t.h);
        const std::complex<double> v = cpow_int(p.z2(), t.k);
        const double P = u.real(), Q = u.imag(), R = v.real(), S = v.imag();
        acc += CliffordQuat(t.coeff * (P * R), t.coeff * (Q * R), t.coeff * (P * S),
                            t.coeff * (Q * S));
    }
    return acc;
}

StemOracle PolyStem::to_oracle() const {
    PolyStem copy = *this;
    return {[copy](const ComplexPoint2& p) { return copy.eval(p); }, domain};
}

double parity_residual(const StemOracle& stem, int samples, std::uint64_t seed) {
    if (samples < 1) throw std::invalid_argument("parity_residual: samples < 1");
    Rng rng(seed);
    const StemDomain& d = stem.domain;
    double worst = 0.0;
    for (int s = 0; s < samples; ++s) {
        ComplexPoint2 p{rng.uniform(d.a1_lo, d.a1_hi), rng.uniform(-d.b1_max, d.b1_max),
                        rng.uniform(d.a2_lo, d.a2_hi), rng.uniform(-d.b2_max, d.b2_max)};
        const CliffordQuat f = stem.eval(p);
        const CliffordQuat c1 = stem.eval(p.conj1());
        const CliffordQuat c2 = stem.eval(p.conj2());
        // F0 even-even, F1 odd-even, F2 even-odd, F12 odd-odd in (b1,b2).
        const double devs[8] = {
            (c1.f0 - f.f0).norm(), (c1.f1 + f.f1).norm(),
            (c1.f2 - f.f2).norm(), (c1.f12 + f.f12).norm(),
            (c2.f0 - f.f0).norm(), (c2.f1 - f.f1).norm(),
            (c2.f2 + f.f2).norm(), (c2.f12 + f.f12).norm()};
        for (double dev : devs) worst = std::max(worst, dev);
    }
    return worst;
}

Quaternion slice_eval(const StemOracle& stem, const SlicePoint& x) {
    const ComplexPoint2 p = x.complex_point();
    if (!stem.domain.contains(p))
        throw std::domain_error("slice_eval: point outside the circular domain");
    const CliffordQuat f = stem.eval(p);
    const Quaternion j1 = x.s1.unit;
    const Quaternion j2 = x.s2.unit;
    return f.f0 + j1 * f.f1 + j2 * f.f2 + j1 * j2 * f.f12;
}

std::pair<double, double> dbar_residual(const StemOracle& stem, const ComplexPoint2& at,
                                        double h_step) {
    if (h_step <= 0) throw std::invalid_argument("dbar_residual: nonpositive step");
    auto shifted = [&at](int coord, double delta) {
        ComplexPoint2 p = at;
        switch (coord) {
            case 0: p.a1 += delta; break;
            case 1: p.b1 += delta; break;
            case 2: p.a2 += delta; break;
            default: p.b2 += delta; break;
        }
        return p;
    };
    for (int coord = 0; coord < 4; ++coord)
        for (double delta : {-h_step, h_step})
            if (!stem.domain.contains(shifted(coord, delta)))
                throw std::domain_error("dbar_residual: stencil leaves the domain");

    auto central = [&](int coord) {
        return (stem.eval(shifted(coord, h_step)) - stem.eval(shifted(coord, -h_step))) /
               (2.0 * h_step);
    };
    const CliffordQuat da1 = central(0);
    const CliffordQuat db1 = central(1);
    const CliffordQuat da2 = central(2);
    const CliffordQuat db2 = central(3);

    const CliffordQuat dbar1 = (da1 + e1_left_mul(db1)) / 2.0;
    const CliffordQuat dbar2 = (da2 + e2_right_mul(db2)) / 2.0;
    return {dbar1.norm(), dbar2.norm()};
}

std::pair<Quaternion, Quaternion> represent_extend(const SurfaceMap& f,
                                                   const Quaternion& i1,
                                                   const Quaternion& i2,
                                                   const SlicePoint& x) {
    const double unit_tol = 1e-9;
    if ((i1 * i1 + Quaternion::one()).norm() > unit_tol ||
        (i2 * i2 + Quaternion::one()).norm() > unit_tol)
        throw std::invalid_argument("represent_extend: I1, I2 must square to -1");

    // J_h from the split; for real components fall back to I_h so the
    // conjugate points collapse and the formula degenerates consistently.
    const Quaternion j1 = x.s1.is_real ? i1 : x.s1.unit;
    const Quaternion j2 = x.s2.is_real ? i2 : x.s2.unit;

    const Quaternion y1 = Quaternion(x.s1.alpha) + x.s1.beta * i1;
    const Quaternion y1c = Quaternion(x.s1.alpha) - x.s1.beta * i1;
    const Quaternion y2 = Quaternion(x.s2.alpha) + x.s2.beta * i2;
    const Quaternion y2c = Quaternion(x.s2.alpha) - x.s2.beta * i2;

    const auto f00 = f(y1, y2);
    const auto f10 = f(y1c, y2);
    const auto f01 = f(y1, y2c);
    const auto f11 = f(y1c, y2c);

    const Quaternion m1 = j1 * i1;            // multiplies row 2
    const Quaternion m2 = j2 * i2;            // row 3
    const Quaternion m12 = j1 * j2 * i2 * i1; // row 4

    auto combine = [&](const Quaternion& v00, const Quaternion& v10, const Quaternion& v01,
                       const Quaternion& v11) {
        Quaternion acc = v00 + v10 + v01 + v11;
        acc += m1 * (-v00 + v10 - v01 + v11);
        acc += m2 * (-v00 - v10 + v01 + v11);
        acc += m12 * (v00 - v10 - v01 + v11);
        return acc / 4.0;
    };
    return {combine(f00.first, f10.first, f01.first, f11.first),
            combine(f00.second, f10.second, f01.second, f11.second)};
}

} // namespace sliceq
