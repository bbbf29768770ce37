#pragma once

#include <cstdint>
#include <vector>

#include "sliceq/aut.hpp"
#include "sliceq/hopf.hpp"

namespace sliceq {

// The two one-parameter families of Hopf surfaces:
//   kind 1 (A1 -> A3):  F(z,w,l) = (z*alpha + w*l,   w*alpha, l)
//   kind 2 (A21 -> B):  F(z,w,l) = (z*beta^p + w^p*l, w*beta,  l)
// Kind 2 requires real beta and p > 1.
struct FamilyParams {
    enum class Kind { A1_to_A3, A21_to_B };
    Kind kind = Kind::A1_to_A3;
    Quaternion alpha; // kind 1
    int p = 2;        // kind 2
    Quaternion beta;  // kind 2

    // Kind-1 iterates are slice regular for real alpha only; kind 2 is a
    // slice-quaternionic family for every lambda.
    bool slice_regular_family(const Tolerance& tol = {}) const {
        return kind == Kind::A21_to_B || alpha.is_real(tol.atol);
    }
};

void validate_family(const FamilyParams& family, const Tolerance& tol = {});

// Parameters of the fiber over lambda. The lambda = 0 fiber of kind 2 is
// diagonal, so it is returned with p normalized to 1 (X_{p,b^p,b,0} and
// X_{1,b^p,b,0} are the same surface).
HopfParams fiber(const FamilyParams& family, const Quaternion& lambda,
                 const Tolerance& tol = {});

struct ScanRow {
    Quaternion lambda;
    HopfCase kase = HopfCase::Invalid;
    AutReport report;
    bool slice_regular_family = false;
};

struct ScanTable {
    std::vector<ScanRow> rows;
    // Set when the scan asserts the dimension jump (kind 1 with real alpha
    // and kind 2): every row must match its expected set and the lambda = 0
    // dimension must strictly dominate every other fiber.
    bool jump_asserted = false;
    bool jump_pass = false;
};

// Per-lambda automorphism-dimension reports. The list must be nonempty and
// contain lambda = 0.
ScanTable dimension_scan(const FamilyParams& family, const std::vector<Quaternion>& lambdas,
                         const AutConfig& cfg = {}, const Tolerance& tol = {});

// Residual of the family's compatibility with fiberwise iteration: F^k
// preserves the third component exactly and acts fiberwise as the fiber
// generator's k-th iterate. Max residual over samples and k in
// [k_lo, k_hi].
double family_commutation_check(const FamilyParams& family, int k_lo, int k_hi, int samples,
                                std::uint64_t seed, const Tolerance& tol = {});

} // namespace sliceq
