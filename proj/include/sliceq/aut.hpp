#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "sliceq/hopf.hpp"
#include "sliceq/quaternion.hpp"
#include "sliceq/series.hpp"
#include "sliceq/tolerance.hpp"

namespace sliceq {

// Flat real enumeration of the coefficients of a SeriesMap with zero
// constant term: (component, h, k) for 1 <= h+k <= N, four reals each.
class CoefficientVector {
  public:
    explicit CoefficientVector(int degree_bound);

    int degree_bound() const { return degree_bound_; }
    int size() const { return static_cast<int>(index_.size()) * 8; }
    int monomials_per_component() const { return static_cast<int>(index_.size()); }

    SeriesMap to_series_map(const std::vector<double>& v) const;
    std::vector<double> from_series_map(const SeriesMap& m) const;

    // Exponents of the basis monomial behind flat position `pos`
    // (pos encodes component, (h,k) and the real coordinate of H).
    struct Basis {
        bool second_component;
        int h;
        int k;
        int quat_coord; // 0..3 for 1, i, j, k
    };
    Basis basis(int pos) const;

  private:
    int degree_bound_;
    std::vector<std::pair<int, int>> index_; // (h,k), 1 <= h+k <= N
};

struct AutConfig {
    int degree = 0;      // 0 = default max(2,p)+1
    int samples = 0;     // 0 = default 4x coefficient-vector length
    std::uint64_t seed = 12345;
    double sv_rel_tol = 1e-8; // kernel threshold relative to sigma_max
};

struct AutReport {
    HopfParams params;
    HopfCase kase = HopfCase::Invalid;
    std::string method; // "direct" or "linearized"
    int degree = 0;
    int samples = 0;
    std::uint64_t seed = 0;
    std::vector<double> singular_values; // sorted descending
    int nullity = 0;
    std::set<int> expected;
    bool pass = false;

    // Ratio between the smallest kept and largest discarded singular value
    // (infinity when nothing is discarded or nothing kept).
    double spectral_gap() const;
};

// Expected real dimension of Aut(X) per case. Returns a set: a singleton
// where the subcase is pinned down, several values where the analysis
// leaves ambiguity (mixed-lambda A3 configurations, one-real A22 pairs).
std::set<int> expected_dimension(const HopfParams& params, const Tolerance& tol = {});

// Nullity of the commutation system Phi∘f - f∘Phi = 0 sampled at random
// points. Exact for p = 1 where both sides are linear in Phi's
// coefficients; rejects p > 1.
AutReport direct_system_nullity(const HopfParams& params, const AutConfig& cfg = {},
                                const Tolerance& tol = {});

// Nullity of the linearization at the identity, V∘f = Df·V: the dimension
// of the centralizer's tangent space. Works for every valid case.
AutReport linearized_system_nullity(const HopfParams& params, const AutConfig& cfg = {},
                                    const Tolerance& tol = {});

// Derivative of f at (z,w) applied to (v1,v2):
// (v1*alpha + sum_{i+j=p-1} w^i*v2*w^j*lambda, v2*beta).
std::pair<Quaternion, Quaternion> df_apply(const HopfParams& params, const Quaternion& z,
                                           const Quaternion& w, const Quaternion& v1,
                                           const Quaternion& v2);

// Free parameters of the explicit per-case automorphism families.
// a0p is the w^p-coefficient used by case B; the other four build the
// degree-one families of the A cases.
struct AutomorphismParams {
    Quaternion a10, a01, b10, b01;
    Quaternion a0p;
};

// Builds the explicit automorphism for the case of `params`, validating
// the slice-membership / intertwining constraints and invertibility.
SeriesMap make_automorphism(const HopfParams& params, const AutomorphismParams& ap,
                            const Tolerance& tol = {});

// Max over seeded sample points of |(Phi∘f)(z,w) - (f∘Phi)(z,w)|.
double commutator_residual(const HopfParams& params, const SeriesMap& phi, int samples = 100,
                           std::uint64_t seed = 7, const Tolerance& tol = {});

// Right-invertibility of (z,w) -> (z*a10 + w*a01, z*b10 + w*b01):
// b01*(a10 - b10*b01^-1*a01) != 0 or a01*(b10 - a10*a01^-1*b01) != 0,
// skipping a branch whose pivot vanishes.
bool is_invertible_linear(const Quaternion& a10, const Quaternion& a01,
                          const Quaternion& b10, const Quaternion& b01,
                          const Tolerance& tol = {});

// Solution set of X = q*X*q^-1 + c (or X = q1*X*q2^-1 + c), classified by
// the rank of the rank-revealing solve.
struct FixedSetClassification {
    enum class Kind { Empty, UniquePoint, AffinePlane, All };
    Kind kind = Kind::Empty;
    Quaternion point;                      // a solution, when one exists
    std::vector<Quaternion> plane_basis;   // kernel basis for AffinePlane
    int rank = 0;                          // rank of Id - M
};

FixedSetClassification rotation_translation_fixed_set(const Quaternion& q,
                                                      const Quaternion& c,
                                                      const Tolerance& tol = {});
FixedSetClassification rotation_translation_fixed_set(const Quaternion& q1,
                                                      const Quaternion& q2,
                                                      const Quaternion& c,
                                                      const Tolerance& tol = {});

// Convenience: direct method for p = 1, linearized otherwise.
AutReport automorphism_dimension(const HopfParams& params, const AutConfig& cfg = {},
                                 const Tolerance& tol = {});

// Runs the selected method at N and N+1 with two seeds and reports whether
// the nullity is stable across all four runs.
struct StabilityResult {
    AutReport primary;
    bool stable = false;
};

StabilityResult automorphism_dimension_stable(const HopfParams& params,
                                              const AutConfig& cfg = {},
                                              const Tolerance& tol = {});

} // namespace sliceq
