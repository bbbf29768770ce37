#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>

#include "sliceq/quaternion.hpp"
#include "sliceq/series.hpp"
#include "sliceq/tolerance.hpp"

namespace sliceq {

// Parameters of the contraction f(z,w) = (z*alpha + w^p*lambda, w*beta).
// Valid when 0 < |alpha| <= |beta| < 1 and (alpha - beta^p)*lambda = 0.
struct HopfParams {
    int p = 1;
    Quaternion alpha;
    Quaternion beta;
    Quaternion lambda;
};

enum class HopfCase { A1, A21, A22, A3, B, Invalid };

const char* to_string(HopfCase c);

struct Classification {
    HopfCase kase = HopfCase::Invalid;
    std::string reason; // set when Invalid

    bool valid() const { return kase != HopfCase::Invalid; }
};

// Total, deterministic case taxonomy:
//   A1  : lambda = 0, alpha = beta
//   A21 : lambda = 0, |alpha| < |beta|
//   A22 : lambda = 0, |alpha| = |beta|, alpha != beta
//   A3  : lambda != 0, p = 1, alpha = beta
//   B   : lambda != 0, p > 1, alpha = beta^p, beta real
// Anything else is Invalid with a reason (notably non-real beta with
// lambda != 0 and p > 1: the iterates do not form a group there).
Classification classify(const HopfParams& params, const Tolerance& tol = {});

// The generator as a series map: first = {(1,0): alpha, (0,p): lambda},
// second = {(0,1): beta}.
SeriesMap generator(const HopfParams& params, const Tolerance& tol = {});

// Coefficient-level closed form of the k-th iterate. The middle
// coefficient is sum_{l+m=k-1} beta^{lp} lambda beta^{mp} for k >= 0 and
// minus the analogous sum over negative indices for k < 0 (the sign makes
// the group law hold; for real beta both collapse to k*beta^{(k-1)p}*lambda).
SeriesMap iterate_closed(const HopfParams& params, int k, const Tolerance& tol = {});

// k-fold application of f (or of its exact algebraic inverse
// f^-1(z,w) = ((z - (w*beta^-1)^p*lambda)*alpha^-1, w*beta^-1) for k < 0).
std::pair<Quaternion, Quaternion> iterate_pointwise(const HopfParams& params, int k,
                                                    const Quaternion& z, const Quaternion& w,
                                                    const Tolerance& tol = {});

// No-fixed-point certificate for f^k, k != 0: both contraction gaps
// |1 - |beta|^k| and |1 - |alpha|^k| are positive, which by the norm
// argument rules out fixed points away from the origin; backed by a
// seeded displacement sample.
struct FixedPointCertificate {
    int k = 0;
    double gap_second = 0;       // |1 - |beta|^k|
    double gap_first = 0;        // |1 - |alpha|^k|
    double min_displacement = 0; // min over samples of |f^k(q) - q|
    bool pass = false;
};

FixedPointCertificate fixed_point_certificate(const HopfParams& params, int k,
                                              int samples = 100, std::uint64_t seed = 1,
                                              const Tolerance& tol = {});

// Proper-discontinuity threshold for annuli r1 < |w| < R1 and r2 < |w| < R2:
// k_star = ceil(max(log(r2/R1)/log|beta|, 0)) + 1 guarantees
// R1*|beta|^k < r2 for every k >= k_star, so f^k maps the first annulus
// below the second. Empirically verified on sampled points for
// k in [k_star, k_star+5].
struct DiscontinuityCheck {
    int k_star = 0;
    bool verified = false;
    double paper_threshold = 0; // log(r2/r1)/log|beta|, reported alongside
};

DiscontinuityCheck discontinuity_check(const HopfParams& params, double r1, double R1,
                                       double r2, double R2, int samples = 1000,
                                       std::uint64_t seed = 1, const Tolerance& tol = {});

// Smallest |k| <= k_max with |f^k(a) - b| < tol_orbit, if any.
std::optional<int> orbit_equivalent(const HopfParams& params,
                                    const std::pair<Quaternion, Quaternion>& point_a,
                                    const std::pair<Quaternion, Quaternion>& point_b,
                                    int k_max, double tol_orbit,
                                    const Tolerance& tol = {});

} // namespace sliceq
