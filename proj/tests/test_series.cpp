#include <doctest.h>

#include "sliceq/hopf.hpp"
#include "sliceq/rng.hpp"
#include "sliceq/series.hpp"

using namespace sliceq;

namespace {
const Quaternion qi = Quaternion::i();
const Quaternion qj = Quaternion::j();
const Quaternion qk = Quaternion::k();
} // namespace

TEST_CASE("ordered evaluation") {
    SUBCASE("identity monomial") {
        OrderedSeries s(1);
        s.set(1, 0, Quaternion::one());
        Rng rng(1);
        const Quaternion q = rng.quaternion_box(1.0);
        CHECK((s.eval(q, rng.quaternion_box(1.0)) - q).norm() == 0.0);
    }
    SUBCASE("z*w*j at (i,k): i*k*j = 1") {
        OrderedSeries s(2);
        s.set(1, 1, qj);
        CHECK((s.eval(qi, qk) - Quaternion::one()).norm() == 0.0);
    }
    SUBCASE("w^2*lambda at w = 1+i: 2i*lambda") {
        const Quaternion lambda{0.3, -1, 2, 0.7};
        OrderedSeries s(2);
        s.set(0, 2, lambda);
        const Quaternion want = (qi * 2.0) * lambda;
        CHECK((s.eval(Quaternion::zero(), {1, 1, 0, 0}) - want).norm() <= 1e-15);
    }
    SUBCASE("ordering matters on non-commuting samples") {
        OrderedSeries s(2);
        const Quaternion c{0.2, 1, -0.5, 2};
        s.set(1, 1, c);
        Rng rng(2);
        for (int t = 0; t < 10; ++t) {
            const Quaternion z = rng.quaternion_shell(0.5, 1.5);
            const Quaternion w = rng.quaternion_shell(0.5, 1.5);
            const Quaternion ordered = s.eval(z, w);
            CHECK((ordered - z * w * c).norm() == 0.0);
            CHECK((ordered - z * c * w).norm() > 1e-6);
            CHECK((ordered - c * z * w).norm() > 1e-6);
        }
    }
}

TEST_CASE("coefficient linearity of eval") {
    Rng rng(3);
    OrderedSeries s(3);
    s.set(1, 0, rng.quaternion_box(1.0));
    s.set(2, 1, rng.quaternion_box(1.0));
    const Quaternion z = rng.quaternion_shell(0.5, 1.5);
    const Quaternion w = rng.quaternion_shell(0.5, 1.5);

    // Perturbing one coefficient by delta changes eval by exactly z^h w^k delta.
    const Quaternion delta{0.1, -0.2, 0.05, 0.3};
    OrderedSeries s2 = s;
    s2.set(2, 1, s.get(2, 1) + delta);
    const Quaternion diff = s2.eval(z, w) - s.eval(z, w);
    const Quaternion want = z * z * w * delta;
    CHECK((diff - want).norm() <= 1e-12 * std::max(1.0, want.norm()));
}

TEST_CASE("linear_combine") {
    OrderedSeries a(2), b(2);
    a.set(1, 0, qi);
    a.set(0, 2, qj);
    b.set(1, 0, qk);

    SUBCASE("s - s = 0") {
        const OrderedSeries zero = linear_combine({{1.0, a}, {-1.0, a}});
        CHECK(zero.coeffs().empty());
    }
    SUBCASE("scaling") {
        const OrderedSeries twice = linear_combine({{2.0, a}});
        CHECK((twice.get(1, 0) - qi * 2.0).norm() == 0.0);
    }
    SUBCASE("midpoint evaluates to midpoint") {
        const OrderedSeries mid = linear_combine({{0.5, a}, {0.5, b}});
        Rng rng(4);
        const Quaternion z = rng.quaternion_box(1.0);
        const Quaternion w = rng.quaternion_box(1.0);
        const Quaternion want = (a.eval(z, w) + b.eval(z, w)) * 0.5;
        CHECK((mid.eval(z, w) - want).norm() <= 1e-14);
    }
    SUBCASE("mismatched bounds rejected") {
        OrderedSeries c(3);
        CHECK_THROWS_AS(linear_combine({{1.0, a}, {1.0, c}}), std::invalid_argument);
    }
}

TEST_CASE("degree bound is enforced, no silent drops") {
    OrderedSeries s(2);
    CHECK_THROWS_AS(s.set(2, 1, qi), std::invalid_argument);
    CHECK_THROWS_AS(s.set(-1, 0, qi), std::invalid_argument);
    s.set(2, 0, qi);
    CHECK((s.get(2, 0) - qi).norm() == 0.0);
}

TEST_CASE("compose_eval") {
    const SeriesMap id = SeriesMap::identity(2);
    SeriesMap m(2);
    m.first.set(1, 0, qi);
    m.first.set(0, 2, qj);
    m.second.set(0, 1, {0.5, 0, 0, 0});

    Rng rng(5);
    const Quaternion z = rng.quaternion_shell(0.5, 1.5);
    const Quaternion w = rng.quaternion_shell(0.5, 1.5);

    SUBCASE("identity on either side") {
        const auto a = compose_eval(id, m, z, w);
        const auto b = m.eval(z, w);
        CHECK((a.first - b.first).norm() == 0.0);
        CHECK((a.second - b.second).norm() == 0.0);
        const auto c = compose_eval(m, id, z, w);
        CHECK((c.first - b.first).norm() == 0.0);
        CHECK((c.second - b.second).norm() == 0.0);
    }
    SUBCASE("f composed with itself matches the closed-form second iterate") {
        const HopfParams params{1, {0.4, 0.2, 0, 0}, {0.4, 0.2, 0, 0}, qj};
        const SeriesMap f = generator(params);
        const SeriesMap f2 = iterate_closed(params, 2);
        for (int t = 0; t < 20; ++t) {
            const Quaternion zz = rng.quaternion_shell(0.5, 1.5);
            const Quaternion ww = rng.quaternion_shell(0.5, 1.5);
            const auto lhs = compose_eval(f, f, zz, ww);
            const auto rhs = f2.eval(zz, ww);
            CHECK((lhs.first - rhs.first).norm() <= 1e-11);
            CHECK((lhs.second - rhs.second).norm() <= 1e-11);
        }
    }
}
