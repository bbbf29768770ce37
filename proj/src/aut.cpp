#include "sliceq/aut.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "sliceq/rng.hpp"

namespace sliceq {

CoefficientVector::CoefficientVector(int degree_bound) : degree_bound_(degree_bound) {
    if (degree_bound < 1)
        throw std::invalid_argument("CoefficientVector: degree bound must be >= 1");
    for (int total = 1; total <= degree_bound; ++total)
        for (int h = total; h >= 0; --h) index_.emplace_back(h, total - h);
}

SeriesMap CoefficientVector::to_series_map(const std::vector<double>& v) const {
    if (static_cast<int>(v.size()) != size())
        throw std::invalid_argument("CoefficientVector: wrong vector length");
    SeriesMap m(degree_bound_);
    const int per = monomials_per_component();
    for (int comp = 0; comp < 2; ++comp) {
        OrderedSeries& s = comp == 0 ? m.first : m.second;
        for (int t = 0; t < per; ++t) {
            const int base = (comp * per + t) * 4;
            s.set(index_[t].first, index_[t].second,
                  {v[base], v[base + 1], v[base + 2], v[base + 3]});
        }
    }
    return m;
}

std::vector<double> CoefficientVector::from_series_map(const SeriesMap& m) const {
    if (m.degree_bound() != degree_bound_)
        throw std::invalid_argument("CoefficientVector: mismatched degree bound");
    if (!m.first.get(0, 0).is_zero() || !m.second.get(0, 0).is_zero())
        throw std::invalid_argument("CoefficientVector: constant term must vanish");
    std::vector<double> v(size(), 0.0);
    const int per = monomials_per_component();
    for (int comp = 0; comp < 2; ++comp) {
        const OrderedSeries& s = comp == 0 ? m.first : m.second;
        for (int t = 0; t < per; ++t) {
            const Quaternion c = s.get(index_[t].first, index_[t].second);
            const int base = (comp * per + t) * 4;
            v[base] = c.w;
            v[base + 1] = c.x;
            v[base + 2] = c.y;
            v[base + 3] = c.z;
        }
    }
    return v;
}

CoefficientVector::Basis CoefficientVector::basis(int pos) const {
    const int per = monomials_per_component();
    const int quat_coord = pos % 4;
    const int t = (pos / 4) % per;
    const bool second = pos / 4 >= per;
    return {second, index_[t].first, index_[t].second, quat_coord};
}

double AutReport::spectral_gap() const {
    if (nullity == 0 || nullity >= static_cast<int>(singular_values.size()))
        return std::numeric_limits<double>::infinity();
    const double kept = singular_values[singular_values.size() - nullity - 1];
    const double discarded = singular_values[singular_values.size() - nullity];
    if (discarded == 0.0) return std::numeric_limits<double>::infinity();
    return kept / discarded;
}

namespace {

// Component of q in the slice of `unit` and the orthogonal remainder.
std::pair<Quaternion, Quaternion> slice_split(const Quaternion& q, const Quaternion& unit) {
    const double proj = q.x * unit.x + q.y * unit.y + q.z * unit.z;
    const Quaternion par(q.w, proj * unit.x, proj * unit.y, proj * unit.z);
    return {par, q - par};
}

} // namespace

std::set<int> expected_dimension(const HopfParams& params, const Tolerance& tol) {
    const Classification c = classify(params, tol);
    if (!c.valid()) throw std::invalid_argument("expected_dimension: " + c.reason);

    const bool alpha_real = params.alpha.is_real(tol.atol);
    const bool beta_real = params.beta.is_real(tol.atol);

    switch (c.kase) {
        case HopfCase::A1:
            return alpha_real ? std::set<int>{16} : std::set<int>{8};
        case HopfCase::A21: {
            if (alpha_real && beta_real) {
                // Resonance alpha = beta^m (m >= 2) keeps the w^m
                // coefficient of the first component alive: the maps
                // (z*a + w^m*c, w*b) all commute with the diagonal f,
                // adding four real dimensions. Only real pairs resonate;
                // for non-real entries the two-sided products kill the
                // candidate coefficient.
                for (int m = 2; m <= 60; ++m) {
                    const double beta_m = std::pow(params.beta.w, m);
                    if (tol.close(params.alpha.w, beta_m)) return {12};
                    if (std::abs(beta_m) < std::abs(params.alpha.w) * 0.5) break;
                }
                return {8};
            }
            if (alpha_real || beta_real) return {6};
            return {4};
        }
        case HopfCase::A22: {
            if (alpha_real && beta_real) return {8};
            if (alpha_real || beta_real) return {6, 8};
            // Non-real pair of equal norm: the off-diagonal coefficients
            // survive exactly when beta lies in the conjugacy class of
            // alpha, i.e. the real parts agree. beta = conj(alpha) is one
            // point of that class.
            if (tol.close(params.alpha.w, params.beta.w)) return {8};
            return {4};
        }
        case HopfCase::A3: {
            if (alpha_real) return {8};
            const Quaternion unit = split(params.alpha).unit;
            const auto [par, perp] = slice_split(params.lambda, unit);
            const double scale = params.lambda.norm();
            const bool perp_zero = tol.near_zero(perp.norm(), scale);
            const bool par_zero = tol.near_zero(par.norm(), scale);
            if (perp_zero) return {4};
            if (par_zero) return {8};
            return {4, 8};
        }
        case HopfCase::B:
            return {5};
        default:
            return {};
    }
}

namespace {

constexpr std::array<Quaternion, 4> kQuatBasis = {Quaternion::one(), Quaternion::i(),
                                                  Quaternion::j(), Quaternion::k()};

struct SamplePoint {
    std::vector<Quaternion> zp, wp; // powers of the sample point
    std::vector<Quaternion> up, vp; // powers of its image under f
    Quaternion z, w;
};

std::vector<Quaternion> powers(const Quaternion& q, int n) {
    std::vector<Quaternion> p(n + 1);
    p[0] = Quaternion::one();
    for (int i = 1; i <= n; ++i) p[i] = p[i - 1] * q;
    return p;
}

// Shared pipeline: assembles the residual matrix column by column (one
// column per real coefficient), row-normalizes, and reads the nullity off
// the singular spectrum.
AutReport run_system(const HopfParams& params, const AutConfig& cfg, const Tolerance& tol,
                     bool linearized) {
    const Classification cls = classify(params, tol);
    if (!cls.valid())
        throw std::invalid_argument("automorphism system: invalid parameters: " + cls.reason);
    if (!linearized && params.p > 1)
        throw std::invalid_argument(
            "direct_system_nullity: nonlinear system for p > 1; use the linearized method");

    const int degree = cfg.degree > 0 ? cfg.degree : std::max(2, params.p) + 1;
    if (degree < params.p)
        throw std::invalid_argument("automorphism system: degree bound below p");
    const CoefficientVector coords(degree);
    const int n = coords.size();
    const int samples = cfg.samples > 0 ? cfg.samples : 4 * n;
    if (samples * 8 < 2 * n)
        throw std::invalid_argument("automorphism system: underdetermined sampling");

    Rng rng(cfg.seed);
    std::vector<SamplePoint> pts(samples);
    for (auto& pt : pts) {
        pt.z = rng.quaternion_shell(0.5, 1.5);
        pt.w = rng.quaternion_shell(0.5, 1.5);
        const Quaternion u = pt.z * params.alpha + int_pow(pt.w, params.p) * params.lambda;
        const Quaternion v = pt.w * params.beta;
        pt.zp = powers(pt.z, degree);
        pt.wp = powers(pt.w, degree);
        pt.up = powers(u, degree);
        pt.vp = powers(v, degree);
    }

    Eigen::MatrixXd mat(8 * samples, n);
    for (int col = 0; col < n; ++col) {
        const auto b = coords.basis(col);
        const Quaternion e = kQuatBasis[b.quat_coord];
        for (int s = 0; s < samples; ++s) {
            const SamplePoint& pt = pts[s];
            const Quaternion image = pt.up[b.h] * pt.vp[b.k]; // monomial at f(z,w)
            const Quaternion local = pt.zp[b.h] * pt.wp[b.k]; // monomial at (z,w)
            Quaternion r1, r2;
            if (!b.second_component) {
                r1 = image * e - local * e * params.alpha;
            } else {
                r2 = image * e - local * e * params.beta;
                // -Df contribution of v2 (for p = 1 this is -v2*lambda,
                // which is also the direct f∘Phi term).
                Quaternion df_term = Quaternion::zero();
                for (int i = 0; i + 1 <= params.p; ++i)
                    df_term += pt.wp[i] * local * e * pt.wp[params.p - 1 - i] * params.lambda;
                r1 = -df_term;
            }
            const int row = 8 * s;
            mat(row + 0, col) = r1.w;
            mat(row + 1, col) = r1.x;
            mat(row + 2, col) = r1.y;
            mat(row + 3, col) = r1.z;
            mat(row + 4, col) = r2.w;
            mat(row + 5, col) = r2.x;
            mat(row + 6, col) = r2.y;
            mat(row + 7, col) = r2.z;
        }
    }

    for (int r = 0; r < mat.rows(); ++r) {
        const double nrm = mat.row(r).norm();
        if (nrm > 0.0) mat.row(r) /= nrm;
    }

    Eigen::BDCSVD<Eigen::MatrixXd> svd(mat);
    AutReport report;
    report.params = params;
    report.kase = cls.kase;
    report.method = linearized ? "linearized" : "direct";
    report.degree = degree;
    report.samples = samples;
    report.seed = cfg.seed;
    report.singular_values.assign(svd.singularValues().data(),
                                  svd.singularValues().data() + svd.singularValues().size());
    const double sigma_max = report.singular_values.empty() ? 0.0 : report.singular_values[0];
    const double threshold = cfg.sv_rel_tol * sigma_max;
    report.nullity = static_cast<int>(
        std::count_if(report.singular_values.begin(), report.singular_values.end(),
                      [&](double s) { return s < threshold; }));
    report.expected = expected_dimension(params, tol);
    report.pass = report.expected.count(report.nullity) > 0;
    return report;
}

} // namespace

AutReport direct_system_nullity(const HopfParams& params, const AutConfig& cfg,
                                const Tolerance& tol) {
    return run_system(params, cfg, tol, /*linearized=*/false);
}

AutReport linearized_system_nullity(const HopfParams& params, const AutConfig& cfg,
                                    const Tolerance& tol) {
    return run_system(params, cfg, tol, /*linearized=*/true);
}

std::pair<Quaternion, Quaternion> df_apply(const HopfParams& params, const Quaternion& /*z*/,
                                           const Quaternion& w, const Quaternion& v1,
                                           const Quaternion& v2) {
    Quaternion sum = Quaternion::zero();
    const auto wp = powers(w, params.p);
    for (int i = 0; i + 1 <= params.p; ++i)
        sum += wp[i] * v2 * wp[params.p - 1 - i] * params.lambda;
    return {v1 * params.alpha + sum, v2 * params.beta};
}

bool is_invertible_linear(const Quaternion& a10, const Quaternion& a01,
                          const Quaternion& b10, const Quaternion& b01,
                          const Tolerance& tol) {
    const double scale =
        std::max({a10.norm(), a01.norm(), b10.norm(), b01.norm(), 1.0});
    if (b01.norm() > tol.atol) {
        const Quaternion lhs = b01 * (a10 - b10 * b01.inverse() * a01);
        if (!tol.near_zero(lhs.norm(), scale * scale)) return true;
    }
    if (a01.norm() > tol.atol) {
        const Quaternion rhs = a01 * (b10 - a10 * a01.inverse() * b01);
        if (!tol.near_zero(rhs.norm(), scale * scale)) return true;
    }
    return false;
}

namespace {

void require_in_slice(const char* name, const Quaternion& value, const Quaternion& axis,
                      bool axis_real, const Tolerance& tol) {
    if (axis_real) return; // L is all of H for a real axis
    const Quaternion unit = split(axis).unit;
    if (!in_slice(value, unit, tol.atol + tol.rtol * std::max(value.norm(), 1.0)))
        throw std::invalid_argument(std::string("make_automorphism: ") + name +
                                    " must lie in the slice of the parameter");
}

void require_intertwines(const char* name, const Quaternion& left, const Quaternion& value,
                         const Quaternion& right, const Tolerance& tol) {
    const Quaternion residue = left * value - value * right;
    const double scale = std::max(1.0, left.norm() * value.norm());
    if (!tol.near_zero(residue.norm(), scale))
        throw std::invalid_argument(std::string("make_automorphism: ") + name +
                                    " violates its intertwining constraint");
}

} // namespace

SeriesMap make_automorphism(const HopfParams& params, const AutomorphismParams& ap,
                            const Tolerance& tol) {
    const Classification cls = classify(params, tol);
    if (!cls.valid())
        throw std::invalid_argument("make_automorphism: invalid parameters: " + cls.reason);

    const bool alpha_real = params.alpha.is_real(tol.atol);
    const bool beta_real = params.beta.is_real(tol.atol);

    switch (cls.kase) {
        case HopfCase::A1: {
            require_in_slice("a10", ap.a10, params.alpha, alpha_real, tol);
            require_in_slice("a01", ap.a01, params.alpha, alpha_real, tol);
            require_in_slice("b10", ap.b10, params.alpha, alpha_real, tol);
            require_in_slice("b01", ap.b01, params.alpha, alpha_real, tol);
            break;
        }
        case HopfCase::A21: {
            if (!ap.a01.is_zero() || !ap.b10.is_zero())
                throw std::invalid_argument(
                    "make_automorphism: case A21 has diagonal automorphisms only");
            require_in_slice("a10", ap.a10, params.alpha, alpha_real, tol);
            require_in_slice("b01", ap.b01, params.beta, beta_real, tol);
            break;
        }
        case HopfCase::A22: {
            require_in_slice("a10", ap.a10, params.alpha, alpha_real, tol);
            require_in_slice("b01", ap.b01, params.beta, beta_real, tol);
            require_intertwines("a01", params.beta, ap.a01, params.alpha, tol);
            require_intertwines("b10", params.alpha, ap.b10, params.beta, tol);
            break;
        }
        case HopfCase::A3: {
            // The four coefficient equations of the commutation system.
            const Quaternion& al = params.alpha;
            const Quaternion& la = params.lambda;
            const Quaternion e1 = la * ap.a10 + al * ap.a01 - ap.a01 * al - ap.b01 * la;
            const Quaternion e2 = al * ap.a10 - ap.a10 * al - ap.b10 * la;
            const Quaternion e3 = la * ap.b10 + al * ap.b01 - ap.b01 * al;
            const Quaternion e4 = al * ap.b10 - ap.b10 * al;
            const double scale = std::max(
                {1.0, ap.a10.norm(), ap.a01.norm(), ap.b10.norm(), ap.b01.norm()});
            if (!tol.near_zero(e1.norm(), scale) || !tol.near_zero(e2.norm(), scale) ||
                !tol.near_zero(e3.norm(), scale) || !tol.near_zero(e4.norm(), scale))
                throw std::invalid_argument(
                    "make_automorphism: case A3 coefficient equations violated");
            break;
        }
        case HopfCase::B: {
            if (!ap.b01.is_real(tol.atol) || ap.b01.norm() <= tol.atol)
                throw std::invalid_argument(
                    "make_automorphism: case B requires real nonzero b01");
            SeriesMap phi(params.p);
            phi.first.set(1, 0, int_pow(ap.b01, params.p));
            if (!ap.a0p.is_zero()) phi.first.set(0, params.p, ap.a0p);
            phi.second.set(0, 1, ap.b01);
            return phi;
        }
        default:
            break;
    }

    if (!is_invertible_linear(ap.a10, ap.a01, ap.b10, ap.b01, tol))
        throw std::invalid_argument("make_automorphism: non-invertible parameters");

    SeriesMap phi(1);
    if (!ap.a10.is_zero()) phi.first.set(1, 0, ap.a10);
    if (!ap.a01.is_zero()) phi.first.set(0, 1, ap.a01);
    if (!ap.b10.is_zero()) phi.second.set(1, 0, ap.b10);
    if (!ap.b01.is_zero()) phi.second.set(0, 1, ap.b01);
    return phi;
}

double commutator_residual(const HopfParams& params, const SeriesMap& phi, int samples,
                           std::uint64_t seed, const Tolerance& tol) {
    const SeriesMap f = generator(params, tol);
    Rng rng(seed);
    double worst = 0.0;
    for (int s = 0; s < samples; ++s) {
        const Quaternion z = rng.quaternion_shell(0.5, 1.5);
        const Quaternion w = rng.quaternion_shell(0.5, 1.5);
        const auto lhs = compose_eval(phi, f, z, w);
        const auto rhs = compose_eval(f, phi, z, w);
        worst = std::max(worst, std::sqrt((lhs.first - rhs.first).norm_sq() +
                                          (lhs.second - rhs.second).norm_sq()));
    }
    return worst;
}

namespace {

FixedSetClassification classify_fixed_set(const Mat4& m, const Quaternion& c,
                                          const Tolerance& tol) {
    Eigen::Matrix4d a;
    for (int r = 0; r < 4; ++r)
        for (int col = 0; col < 4; ++col) a(r, col) = (r == col ? 1.0 : 0.0) - m[r][col];
    Eigen::Vector4d rhs(c.w, c.x, c.y, c.z);

    Eigen::FullPivLU<Eigen::Matrix4d> lu(a);
    lu.setThreshold(1e-9);
    const int rank = static_cast<int>(lu.rank());

    FixedSetClassification out;
    out.rank = rank;

    if (rank == 0) {
        out.kind = c.norm() <= tol.atol ? FixedSetClassification::Kind::All
                                        : FixedSetClassification::Kind::Empty;
        return out;
    }

    // Minimum-norm particular solution, then consistency check.
    Eigen::CompleteOrthogonalDecomposition<Eigen::Matrix4d> cod(a);
    cod.setThreshold(1e-9);
    const Eigen::Vector4d x = cod.solve(rhs);
    const double residual = (a * x - rhs).norm();
    if (residual > tol.atol + tol.rtol * std::max(1.0, rhs.norm())) {
        out.kind = FixedSetClassification::Kind::Empty;
        return out;
    }
    out.point = {x(0), x(1), x(2), x(3)};
    if (rank == 4) {
        out.kind = FixedSetClassification::Kind::UniquePoint;
        return out;
    }
    out.kind = FixedSetClassification::Kind::AffinePlane;
    const Eigen::MatrixXd kernel_cols = lu.kernel();
    for (int col = 0; col < kernel_cols.cols(); ++col) {
        Eigen::Vector4d k = kernel_cols.col(col);
        k.normalize();
        out.plane_basis.push_back({k(0), k(1), k(2), k(3)});
    }
    return out;
}

} // namespace

FixedSetClassification rotation_translation_fixed_set(const Quaternion& q,
                                                      const Quaternion& c,
                                                      const Tolerance& tol) {
    return classify_fixed_set(rotation_matrix(q), c, tol);
}

FixedSetClassification rotation_translation_fixed_set(const Quaternion& q1,
                                                      const Quaternion& q2,
                                                      const Quaternion& c,
                                                      const Tolerance& tol) {
    return classify_fixed_set(two_sided_matrix(q1, q2), c, tol);
}

AutReport automorphism_dimension(const HopfParams& params, const AutConfig& cfg,
                                 const Tolerance& tol) {
    return params.p == 1 ? direct_system_nullity(params, cfg, tol)
                         : linearized_system_nullity(params, cfg, tol);
}

StabilityResult automorphism_dimension_stable(const HopfParams& params, const AutConfig& cfg,
                                              const Tolerance& tol) {
    AutConfig base = cfg;
    if (base.degree == 0) base.degree = std::max(2, params.p) + 1;

    StabilityResult out;
    out.primary = automorphism_dimension(params, base, tol);
    out.stable = true;
    for (int bump = 0; bump <= 1; ++bump) {
        for (std::uint64_t ds = 0; ds <= 1; ++ds) {
            if (bump == 0 && ds == 0) continue;
            AutConfig alt = base;
            alt.degree = base.degree + bump;
            alt.samples = 0; // rescale with the larger coefficient space
            alt.seed = base.seed + ds;
            const AutReport r = automorphism_dimension(params, alt, tol);
            if (r.nullity != out.primary.nullity) out.stable = false;
        }
    }
    return out;
}

} // namespace sliceq
