#include <doctest.h>

#include <cmath>

#include "sliceq/hopf.hpp"
#include "sliceq/rng.hpp"

using namespace sliceq;

namespace {
const Quaternion qi = Quaternion::i();
const Quaternion qj = Quaternion::j();

const HopfParams kCaseB{2, 0.25, 0.5, qj};
const HopfParams kCaseA3{1, {0.4, 0.2, 0, 0}, {0.4, 0.2, 0, 0}, qj};
} // namespace

TEST_CASE("classification") {
    CHECK(classify({1, 0.5, 0.5, {}}).kase == HopfCase::A1);
    CHECK(classify({1, qi * 0.5, qi * 0.5, {}}).kase == HopfCase::A1);
    CHECK(classify({1, qi * 0.25, qj * 0.5, {}}).kase == HopfCase::A21);
    CHECK(classify({1, qi * 0.5, qj * 0.5, {}}).kase == HopfCase::A22);
    CHECK(classify({1, 0.5, 0.5, qj}).kase == HopfCase::A3);
    CHECK(classify(kCaseB).kase == HopfCase::B);

    SUBCASE("invalid: non-real beta with lambda != 0, p > 1") {
        const Classification c = classify({2, -0.25, qi * 0.5, qj});
        CHECK(c.kase == HopfCase::Invalid);
        CHECK(c.reason.find("not a group") != std::string::npos);
    }
    SUBCASE("invalid: norms out of range") {
        CHECK_FALSE(classify({1, 0.7, 0.5, {}}).valid());  // |alpha| > |beta|
        CHECK_FALSE(classify({1, 0.5, 1.0, {}}).valid());  // |beta| = 1
        CHECK_FALSE(classify({1, {}, 0.5, {}}).valid());   // alpha = 0
    }
    SUBCASE("invalid: constraint (alpha - beta^p) lambda = 0 violated") {
        CHECK_FALSE(classify({1, 0.25, 0.5, qj}).valid());
        CHECK_FALSE(classify({2, 0.3, 0.5, qj}).valid());
    }
    SUBCASE("classification is total on random parameters") {
        Rng rng(13);
        for (int s = 0; s < 200; ++s) {
            HopfParams p{1 + static_cast<int>(rng.engine()() % 3),
                         rng.quaternion_box(0.8), rng.quaternion_box(0.8),
                         rng.quaternion_box(0.5)};
            const Classification c = classify(p);
            if (!c.valid()) CHECK_FALSE(c.reason.empty());
        }
    }
}

TEST_CASE("generator") {
    SUBCASE("A1: (z/2, w/2)") {
        const SeriesMap f = generator({1, 0.5, 0.5, {}});
        Rng rng(1);
        const Quaternion z = rng.quaternion_box(1.0), w = rng.quaternion_box(1.0);
        const auto [fz, fw] = f.eval(z, w);
        CHECK((fz - z * 0.5).norm() == 0.0);
        CHECK((fw - w * 0.5).norm() == 0.0);
    }
    SUBCASE("B: (z/4 + w^2 j, w/2)") {
        const SeriesMap f = generator(kCaseB);
        CHECK((f.first.get(1, 0) - Quaternion(0.25)).norm() == 0.0);
        CHECK((f.first.get(0, 2) - qj).norm() == 0.0);
        CHECK((f.second.get(0, 1) - Quaternion(0.5)).norm() == 0.0);
    }
    SUBCASE("z = 0 column: (w^p lambda, w beta)") {
        const SeriesMap f = generator(kCaseB);
        Rng rng(2);
        const Quaternion w = rng.quaternion_box(1.0);
        const auto [fz, fw] = f.eval(Quaternion::zero(), w);
        CHECK((fz - int_pow(w, 2) * qj).norm() <= 1e-15);
        CHECK((fw - w * 0.5).norm() == 0.0);
    }
    CHECK_THROWS_AS(generator({1, 0.25, 0.5, qj}), std::invalid_argument);
}

TEST_CASE("closed-form iterates") {
    SUBCASE("k = 0 is the identity") {
        const SeriesMap m = iterate_closed(kCaseB, 0);
        CHECK(m == SeriesMap::identity(2));
    }
    SUBCASE("B, k = 2: (z/16 + w^2 j/2, w/4) by hand composition") {
        const SeriesMap m = iterate_closed(kCaseB, 2);
        CHECK((m.first.get(1, 0) - Quaternion(1.0 / 16)).norm() <= 1e-16);
        CHECK((m.first.get(0, 2) - qj * 0.5).norm() <= 1e-16);
        CHECK((m.second.get(0, 1) - Quaternion(0.25)).norm() <= 1e-16);
    }
    SUBCASE("group law oracle: k and -k compose to the identity") {
        Rng rng(3);
        for (const auto& params : {kCaseB, kCaseA3}) {
            for (int k = 1; k <= 3; ++k) {
                const SeriesMap fwd = iterate_closed(params, k);
                const SeriesMap bwd = iterate_closed(params, -k);
                for (int s = 0; s < 20; ++s) {
                    const Quaternion z = rng.quaternion_shell(0.5, 1.5);
                    const Quaternion w = rng.quaternion_shell(0.5, 1.5);
                    const auto [u, v] = compose_eval(bwd, fwd, z, w);
                    CHECK((u - z).norm() <= 1e-10 * std::max(1.0, z.norm()));
                    CHECK((v - w).norm() <= 1e-10 * std::max(1.0, w.norm()));
                }
            }
        }
    }
    SUBCASE("case B middle coefficient is k beta^{(k-1)p} lambda, exactly") {
        for (int k = -5; k <= 5; ++k) {
            if (k == 0) continue;
            const SeriesMap m = iterate_closed(kCaseB, k);
            const Quaternion want =
                static_cast<double>(k) * int_pow(kCaseB.beta, (k - 1) * kCaseB.p) *
                kCaseB.lambda;
            CHECK((m.first.get(0, 2) - want).norm() == 0.0);
        }
    }
}

TEST_CASE("pointwise iterates") {
    Rng rng(4);
    SUBCASE("k = 1 equals the generator") {
        const SeriesMap f = generator(kCaseB);
        for (int s = 0; s < 10; ++s) {
            const Quaternion z = rng.quaternion_box(1.0), w = rng.quaternion_box(1.0);
            const auto a = iterate_pointwise(kCaseB, 1, z, w);
            const auto b = f.eval(z, w);
            CHECK((a.first - b.first).norm() <= 1e-15);
            CHECK((a.second - b.second).norm() <= 1e-15);
        }
    }
    SUBCASE("matches closed form for |k| <= 3 across cases") {
        const HopfParams cases[] = {{1, 0.5, 0.5, {}},
                                    {1, qi * 0.25, qj * 0.5, {}},
                                    {1, qi * 0.5, qj * 0.5, {}},
                                    kCaseA3,
                                    kCaseB};
        for (const auto& params : cases) {
            for (int k = -3; k <= 3; ++k) {
                const SeriesMap closed = iterate_closed(params, k);
                for (int s = 0; s < 10; ++s) {
                    const Quaternion z = rng.quaternion_shell(0.5, 1.5);
                    const Quaternion w = rng.quaternion_shell(0.5, 1.5);
                    const auto [cz, cw] = closed.eval(z, w);
                    const auto [pz, pw] = iterate_pointwise(params, k, z, w);
                    const double scale = std::max(1.0, std::sqrt(pz.norm_sq() + pw.norm_sq()));
                    CHECK(std::sqrt((cz - pz).norm_sq() + (cw - pw).norm_sq()) / scale <=
                          1e-10);
                }
            }
        }
    }
    SUBCASE("second component norm is exactly geometric") {
        for (int k = -4; k <= 4; ++k) {
            const Quaternion z = rng.quaternion_shell(0.5, 1.5);
            const Quaternion w = rng.quaternion_shell(0.5, 1.5);
            const auto [fz, fw] = iterate_pointwise(kCaseB, k, z, w);
            const double want = w.norm() * std::pow(kCaseB.beta.norm(), k);
            CHECK(std::abs(fw.norm() - want) <= 1e-12 * want);
        }
    }
    SUBCASE("group law on random points") {
        for (int k1 = -3; k1 <= 3; ++k1)
            for (int k2 = -3; k2 <= 3; ++k2) {
                const Quaternion z = rng.quaternion_shell(0.5, 1.5);
                const Quaternion w = rng.quaternion_shell(0.5, 1.5);
                const auto [mz, mw] = iterate_pointwise(kCaseA3, k2, z, w);
                const auto [az, aw] = iterate_pointwise(kCaseA3, k1, mz, mw);
                const auto [bz, bw] = iterate_pointwise(kCaseA3, k1 + k2, z, w);
                const double scale = std::max(1.0, std::sqrt(bz.norm_sq() + bw.norm_sq()));
                CHECK(std::sqrt((az - bz).norm_sq() + (aw - bw).norm_sq()) / scale <= 1e-9);
            }
    }
    CHECK_THROWS_AS(iterate_pointwise(kCaseB, 1, Quaternion::zero(), Quaternion::zero()),
                    std::domain_error);
}

TEST_CASE("fixed-point certificates") {
    SUBCASE("case B, k = 1: gaps (1/2, 1 - 2^-p)") {
        const auto cert = fixed_point_certificate(kCaseB, 1);
        CHECK(cert.gap_second == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(cert.gap_first == doctest::Approx(0.75).epsilon(1e-12)); // |alpha| = |beta|^p
        CHECK(cert.pass);
    }
    SUBCASE("k = -2 second gap |1 - 4| = 3") {
        const auto cert = fixed_point_certificate(kCaseB, -2);
        CHECK(cert.gap_second == doctest::Approx(3.0).epsilon(1e-12));
        CHECK(cert.pass);
    }
    SUBCASE("all valid cases certify") {
        const HopfParams cases[] = {{1, 0.5, 0.5, {}}, {1, qi * 0.5, qj * 0.5, {}}, kCaseA3};
        for (const auto& params : cases)
            for (int k : {-3, -1, 1, 2, 5}) CHECK(fixed_point_certificate(params, k).pass);
    }
    CHECK_THROWS_AS(fixed_point_certificate(kCaseB, 0), std::invalid_argument);
}

TEST_CASE("proper discontinuity") {
    SUBCASE("annuli (1,2,1,2) at beta = 1/2 need k >= 2") {
        const auto check = discontinuity_check(kCaseB, 1, 2, 1, 2, 500, 1);
        CHECK(check.k_star == 2);
        CHECK(check.verified);
        CHECK(check.paper_threshold == doctest::Approx(0.0).epsilon(1e-12));
    }
    SUBCASE("r2 >= R1 exits immediately") {
        const auto check = discontinuity_check(kCaseB, 1, 2, 2.5, 3, 200, 1);
        CHECK(check.k_star == 1);
        CHECK(check.verified);
    }
    SUBCASE("degenerate annuli rejected") {
        CHECK_THROWS_AS(discontinuity_check(kCaseB, 2, 1, 1, 2), std::invalid_argument);
        CHECK_THROWS_AS(discontinuity_check(kCaseB, 0, 1, 1, 2), std::invalid_argument);
    }
}

TEST_CASE("orbit equivalence") {
    Rng rng(5);
    const std::pair<Quaternion, Quaternion> a{rng.quaternion_shell(0.5, 1.5),
                                              rng.quaternion_shell(0.5, 1.5)};
    SUBCASE("a and f(a)") {
        const auto fa = iterate_pointwise(kCaseB, 1, a.first, a.second);
        CHECK(orbit_equivalent(kCaseB, a, fa, 5, 1e-9) == 1);
    }
    SUBCASE("a and a") { CHECK(orbit_equivalent(kCaseB, a, a, 5, 1e-9) == 0); }
    SUBCASE("negative direction") {
        const auto fa = iterate_pointwise(kCaseB, -2, a.first, a.second);
        CHECK(orbit_equivalent(kCaseB, a, fa, 5, 1e-9) == -2);
    }
    SUBCASE("perturbation beyond tolerance is not equivalent") {
        auto fa = iterate_pointwise(kCaseB, 3, a.first, a.second);
        fa.first = fa.first * 1.01;
        CHECK_FALSE(orbit_equivalent(kCaseB, a, fa, 5, 1e-9).has_value());
    }
    SUBCASE("origin rejected") {
        CHECK_THROWS_AS(
            orbit_equivalent(kCaseB, {Quaternion::zero(), Quaternion::zero()}, a, 3, 1e-9),
            std::domain_error);
    }
}
