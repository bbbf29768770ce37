#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <ostream>
#include <stdexcept>
#include <utility>

namespace sliceq {

// Quaternion q = w + x*i + y*j + z*k over doubles.
// i*j = k, j*k = i, k*i = j, i^2 = j^2 = k^2 = -1.
struct Quaternion {
    double w = 0.0, x = 0.0, y = 0.0, z = 0.0;

    constexpr Quaternion() = default;
    constexpr Quaternion(double w_, double x_, double y_, double z_)
        : w(w_), x(x_), y(y_), z(z_) {}
    // Real quaternion.
    constexpr Quaternion(double r) : w(r) {}

    static constexpr Quaternion zero() { return {0, 0, 0, 0}; }
    static constexpr Quaternion one() { return {1, 0, 0, 0}; }
    static constexpr Quaternion i() { return {0, 1, 0, 0}; }
    static constexpr Quaternion j() { return {0, 0, 1, 0}; }
    static constexpr Quaternion k() { return {0, 0, 0, 1}; }

    constexpr bool operator==(const Quaternion&) const = default;

    constexpr Quaternion operator-() const { return {-w, -x, -y, -z}; }
    constexpr Quaternion operator+(const Quaternion& o) const {
        return {w + o.w, x + o.x, y + o.y, z + o.z};
    }
    constexpr Quaternion operator-(const Quaternion& o) const {
        return {w - o.w, x - o.x, y - o.y, z - o.z};
    }
    // Hamilton product.
    constexpr Quaternion operator*(const Quaternion& o) const {
        return {w * o.w - x * o.x - y * o.y - z * o.z,
                w * o.x + x * o.w + y * o.z - z * o.y,
                w * o.y - x * o.z + y * o.w + z * o.x,
                w * o.z + x * o.y - y * o.x + z * o.w};
    }
    constexpr Quaternion operator*(double s) const { return {w * s, x * s, y * s, z * s}; }
    constexpr Quaternion operator/(double s) const { return {w / s, x / s, y / s, z / s}; }
    Quaternion& operator+=(const Quaternion& o) { return *this = *this + o; }
    Quaternion& operator-=(const Quaternion& o) { return *this = *this - o; }
    Quaternion& operator*=(const Quaternion& o) { return *this = *this * o; }

    constexpr Quaternion conj() const { return {w, -x, -y, -z}; }
    constexpr double norm_sq() const { return w * w + x * x + y * y + z * z; }
    double norm() const { return std::sqrt(norm_sq()); }
    // |imaginary part|
    double imag_norm() const { return std::sqrt(x * x + y * y + z * z); }

    constexpr bool is_zero() const { return w == 0 && x == 0 && y == 0 && z == 0; }
    bool is_real(double tol = 1e-12) const { return imag_norm() <= tol; }

    Quaternion inverse() const {
        const double n2 = norm_sq();
        if (n2 == 0.0) throw std::domain_error("inverse of zero quaternion");
        return {w / n2, -x / n2, -y / n2, -z / n2};
    }

    std::array<double, 4> components() const { return {w, x, y, z}; }
};

inline constexpr Quaternion operator*(double s, const Quaternion& q) { return q * s; }

inline std::ostream& operator<<(std::ostream& os, const Quaternion& q) {
    return os << "(" << q.w << "," << q.x << "," << q.y << "," << q.z << ")";
}

inline double dist(const Quaternion& a, const Quaternion& b) { return (a - b).norm(); }

// Integer power by repeated Hamilton product; q^0 = 1, negative
// exponents go through the exact inverse.
inline Quaternion int_pow(Quaternion q, long long n) {
    if (n < 0) {
        q = q.inverse();
        n = -n;
    }
    Quaternion acc = Quaternion::one();
    while (n > 0) {
        if (n & 1) acc = acc * q;
        q = q * q;
        n >>= 1;
    }
    return acc;
}

// q = alpha + beta * unit with beta >= 0 and unit^2 = -1.
// For real q the slice is degenerate (the paper sets L = H there);
// is_real flags it and unit falls back to i by convention.
struct SliceDecomposition {
    double alpha = 0.0;
    double beta = 0.0;
    Quaternion unit = Quaternion::i();
    bool is_real = true;

    Quaternion reconstruct() const { return Quaternion(alpha) + beta * unit; }
};

inline SliceDecomposition split(const Quaternion& q, double real_tol = 0.0) {
    SliceDecomposition d;
    d.alpha = q.w;
    d.beta = q.imag_norm();
    if (d.beta <= real_tol) {
        d.beta = 0.0;
        d.is_real = true;
        d.unit = Quaternion::i();
    } else {
        d.is_real = false;
        d.unit = Quaternion(0, q.x / d.beta, q.y / d.beta, q.z / d.beta);
    }
    return d;
}

// Distance from q to the plane R + R*unit, then compared against tol.
inline bool in_slice(const Quaternion& q, const Quaternion& unit, double tol) {
    const Quaternion sq = unit * unit;
    if ((sq + Quaternion::one()).norm() > 1e-9)
        throw std::invalid_argument("in_slice: unit is not an imaginary unit");
    // Component of the imaginary part of q orthogonal to unit.
    const double proj = q.x * unit.x + q.y * unit.y + q.z * unit.z;
    const Quaternion residue(0, q.x - proj * unit.x, q.y - proj * unit.y, q.z - proj * unit.z);
    return residue.norm() < tol;
}

using Mat4 = std::array<std::array<double, 4>, 4>;

// Real 4x4 matrix of X -> q * X * q^-1 acting on (w,x,y,z) column vectors.
// Orthogonal; fixes 1 and the axis I_q, rotates the orthogonal imaginary
// plane by twice the argument of q.
inline Mat4 rotation_matrix(const Quaternion& q) {
    if (q.is_zero()) throw std::domain_error("rotation_matrix: zero quaternion");
    const Quaternion qi = q.inverse();
    const std::array<Quaternion, 4> basis = {Quaternion::one(), Quaternion::i(),
                                             Quaternion::j(), Quaternion::k()};
    Mat4 m{};
    for (int c = 0; c < 4; ++c) {
        const Quaternion col = q * basis[c] * qi;
        m[0][c] = col.w;
        m[1][c] = col.x;
        m[2][c] = col.y;
        m[3][c] = col.z;
    }
    return m;
}

// Same layout for the two-sided map X -> q1 * X * q2^-1.
inline Mat4 two_sided_matrix(const Quaternion& q1, const Quaternion& q2) {
    if (q1.is_zero() || q2.is_zero())
        throw std::domain_error("two_sided_matrix: zero quaternion");
    const Quaternion q2i = q2.inverse();
    const std::array<Quaternion, 4> basis = {Quaternion::one(), Quaternion::i(),
                                             Quaternion::j(), Quaternion::k()};
    Mat4 m{};
    for (int c = 0; c < 4; ++c) {
        const Quaternion col = q1 * basis[c] * q2i;
        m[0][c] = col.w;
        m[1][c] = col.x;
        m[2][c] = col.y;
        m[3][c] = col.z;
    }
    return m;
}

// q = z + w*j with z, w complex over i.
inline std::pair<std::complex<double>, std::complex<double>> complexify(const Quaternion& q) {
    return {{q.w, q.x}, {q.y, q.z}};
}

using CMat2 = std::array<std::complex<double>, 4>; // row-major 2x2

// Right multiplication by a = alpha + beta*j as a complex 2x2 matrix in
// row-vector convention: complexify(q * a) = complexify(q) * M(a).
inline CMat2 right_mult_complex_matrix(const Quaternion& a) {
    const std::complex<double> alpha(a.w, a.x);
    const std::complex<double> beta(a.y, a.z);
    return {alpha, beta, -std::conj(beta), std::conj(alpha)};
}

inline CMat2 cmat_mul(const CMat2& a, const CMat2& b) {
    return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
            a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
}

} // namespace sliceq
