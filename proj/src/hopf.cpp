#include "sliceq/hopf.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "sliceq/rng.hpp"

namespace sliceq {

const char* to_string(HopfCase c) {
    switch (c) {
        case HopfCase::A1: return "A1";
        case HopfCase::A21: return "A21";
        case HopfCase::A22: return "A22";
        case HopfCase::A3: return "A3";
        case HopfCase::B: return "B";
        default: return "Invalid";
    }
}

Classification classify(const HopfParams& params, const Tolerance& tol) {
    const double na = params.alpha.norm();
    const double nb = params.beta.norm();

    if (params.p < 1) return {HopfCase::Invalid, "p must be a positive integer"};
    if (na <= tol.atol) return {HopfCase::Invalid, "alpha must be nonzero"};
    if (nb >= 1.0 - tol.atol) return {HopfCase::Invalid, "|beta| must be < 1"};
    if (na > nb + tol.atol) return {HopfCase::Invalid, "|alpha| must be <= |beta|"};

    const Quaternion beta_p = int_pow(params.beta, params.p);
    const double constraint = ((params.alpha - beta_p) * params.lambda).norm();
    if (constraint > tol.atol)
        return {HopfCase::Invalid, "(alpha - beta^p)*lambda = 0 violated"};

    const bool lambda_zero = params.lambda.norm() <= tol.atol;
    const bool alpha_eq_beta = (params.alpha - params.beta).norm() <= tol.atol;

    if (lambda_zero) {
        if (alpha_eq_beta) return {HopfCase::A1, ""};
        if (tol.close(na, nb)) return {HopfCase::A22, ""};
        return {HopfCase::A21, ""};
    }

    // lambda != 0 and the constraint force alpha = beta^p.
    if (params.p == 1) {
        if (!alpha_eq_beta)
            return {HopfCase::Invalid, "p = 1 with lambda != 0 requires alpha = beta"};
        return {HopfCase::A3, ""};
    }
    if (!params.beta.is_real(tol.atol))
        return {HopfCase::Invalid,
                "non-real beta with lambda != 0 and p > 1: the iterates are not a group"};
    if ((params.alpha - beta_p).norm() > tol.atol)
        return {HopfCase::Invalid, "case B requires alpha = beta^p"};
    return {HopfCase::B, ""};
}

namespace {

void require_valid(const HopfParams& params, const Tolerance& tol) {
    const Classification c = classify(params, tol);
    if (!c.valid()) throw std::invalid_argument("invalid Hopf parameters: " + c.reason);
}

// Middle coefficient of the closed-form iterate. For k >= 0 it is
// sum_{l=0}^{k-1} beta^{lp} lambda beta^{(k-1-l)p}; for k < 0 the same sum
// over l in {k,...,-1} enters with a minus sign (forced by the group law:
// compose with the exact inverse and the cross terms must cancel).
Quaternion middle_coefficient(const Quaternion& beta, const Quaternion& lambda, int p, int k) {
    if (k == 0) return Quaternion::zero();
    if (beta.is_real(0.0)) {
        // k * beta^{(k-1)p} * lambda, exact for both signs of k.
        return static_cast<double>(k) * int_pow(beta, static_cast<long long>(k - 1) * p) *
               lambda;
    }
    Quaternion acc = Quaternion::zero();
    if (k > 0) {
        for (int l = 0; l <= k - 1; ++l)
            acc += int_pow(beta, static_cast<long long>(l) * p) * lambda *
                   int_pow(beta, static_cast<long long>(k - 1 - l) * p);
        return acc;
    }
    for (int l = k; l <= -1; ++l)
        acc += int_pow(beta, static_cast<long long>(l) * p) * lambda *
               int_pow(beta, static_cast<long long>(k - 1 - l) * p);
    return -acc;
}

} // namespace

SeriesMap generator(const HopfParams& params, const Tolerance& tol) {
    require_valid(params, tol);
    SeriesMap f(std::max(1, params.p));
    f.first.set(1, 0, params.alpha);
    if (!params.lambda.is_zero()) f.first.set(0, params.p, params.lambda);
    f.second.set(0, 1, params.beta);
    return f;
}

SeriesMap iterate_closed(const HopfParams& params, int k, const Tolerance& tol) {
    require_valid(params, tol);
    SeriesMap m(std::max(1, params.p));
    if (params.lambda.norm() <= tol.atol) {
        // Diagonal cases: (z*alpha^k, w*beta^k).
        m.first.set(1, 0, int_pow(params.alpha, k));
        m.second.set(0, 1, int_pow(params.beta, k));
        return m;
    }
    // A3 (p=1, alpha=beta) and B (beta real, alpha=beta^p).
    m.first.set(1, 0, int_pow(params.beta, static_cast<long long>(k) * params.p));
    const Quaternion mid = middle_coefficient(params.beta, params.lambda, params.p, k);
    if (!mid.is_zero()) m.first.set(0, params.p, mid);
    m.second.set(0, 1, int_pow(params.beta, k));
    return m;
}

std::pair<Quaternion, Quaternion> iterate_pointwise(const HopfParams& params, int k,
                                                    const Quaternion& z, const Quaternion& w,
                                                    const Tolerance& tol) {
    require_valid(params, tol);
    if (z.is_zero() && w.is_zero())
        throw std::domain_error("iterate_pointwise: the origin is not in the space");

    Quaternion u = z, v = w;
    if (k >= 0) {
        for (int step = 0; step < k; ++step) {
            const Quaternion u_next = u * params.alpha + int_pow(v, params.p) * params.lambda;
            v = v * params.beta;
            u = u_next;
        }
    } else {
        const Quaternion alpha_inv = params.alpha.inverse();
        const Quaternion beta_inv = params.beta.inverse();
        for (int step = 0; step < -k; ++step) {
            const Quaternion v_next = v * beta_inv;
            u = (u - int_pow(v_next, params.p) * params.lambda) * alpha_inv;
            v = v_next;
        }
    }
    return {u, v};
}

FixedPointCertificate fixed_point_certificate(const HopfParams& params, int k, int samples,
                                              std::uint64_t seed, const Tolerance& tol) {
    require_valid(params, tol);
    if (k == 0) throw std::invalid_argument("fixed_point_certificate: k must be nonzero");

    FixedPointCertificate cert;
    cert.k = k;
    cert.gap_second = std::abs(1.0 - std::pow(params.beta.norm(), k));
    cert.gap_first = std::abs(1.0 - std::pow(params.alpha.norm(), k));

    Rng rng(seed);
    double min_disp = std::numeric_limits<double>::infinity();
    for (int s = 0; s < samples; ++s) {
        const Quaternion z = rng.quaternion_shell(0.2, 2.0);
        const Quaternion w = rng.quaternion_shell(0.2, 2.0);
        const auto [fz, fw] = iterate_pointwise(params, k, z, w, tol);
        const double disp = std::sqrt((fz - z).norm_sq() + (fw - w).norm_sq());
        min_disp = std::min(min_disp, disp);
    }
    cert.min_displacement = min_disp;
    cert.pass = cert.gap_second > 0 && cert.gap_first > 0 && min_disp > 0;
    return cert;
}

DiscontinuityCheck discontinuity_check(const HopfParams& params, double r1, double R1,
                                       double r2, double R2, int samples, std::uint64_t seed,
                                       const Tolerance& tol) {
    require_valid(params, tol);
    if (!(0 < r1 && r1 < R1) || !(0 < r2 && r2 < R2))
        throw std::invalid_argument("discontinuity_check: degenerate annuli");

    const double log_beta = std::log(params.beta.norm()); // < 0
    DiscontinuityCheck out;
    out.paper_threshold = std::log(r2 / r1) / log_beta;

    // Conservative bound from |w * beta^k| <= R1 |beta|^k < r2.
    const double ratio = std::log(r2 / R1) / log_beta;
    out.k_star = static_cast<int>(std::ceil(std::max(ratio, 0.0))) + 1;

    Rng rng(seed);
    bool ok = true;
    for (int s = 0; s < samples && ok; ++s) {
        const Quaternion z = rng.quaternion_shell(0.1, R1);
        const Quaternion w = rng.quaternion_shell(r1, R1);
        for (int k = out.k_star; k <= out.k_star + 5; ++k) {
            const auto [fz, fw] = iterate_pointwise(params, k, z, w, tol);
            if (fw.norm() >= r2) {
                ok = false;
                break;
            }
        }
    }
    out.verified = ok;
    return out;
}

std::optional<int> orbit_equivalent(const HopfParams& params,
                                    const std::pair<Quaternion, Quaternion>& point_a,
                                    const std::pair<Quaternion, Quaternion>& point_b,
                                    int k_max, double tol_orbit, const Tolerance& tol) {
    require_valid(params, tol);
    if ((point_a.first.is_zero() && point_a.second.is_zero()) ||
        (point_b.first.is_zero() && point_b.second.is_zero()))
        throw std::domain_error("orbit_equivalent: points must avoid the origin");

    auto matches = [&](const std::pair<Quaternion, Quaternion>& p) {
        return std::sqrt((p.first - point_b.first).norm_sq() +
                         (p.second - point_b.second).norm_sq()) < tol_orbit;
    };

    auto forward = point_a;
    auto backward = point_a;
    if (matches(point_a)) return 0;
    for (int k = 1; k <= k_max; ++k) {
        forward = iterate_pointwise(params, 1, forward.first, forward.second, tol);
        if (matches(forward)) return k;
        backward = iterate_pointwise(params, -1, backward.first, backward.second, tol);
        if (matches(backward)) return -k;
    }
    return std::nullopt;
}

} // namespace sliceq
