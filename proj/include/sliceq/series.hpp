#pragma once

#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "sliceq/quaternion.hpp"

namespace sliceq {

// Truncated ordered power series in two quaternionic variables with right
// coefficients: sum over h+k <= N of z^h * w^k * a_{h,k}. Variables stay to
// the left of the coefficient; that order is the whole point.
class OrderedSeries {
  public:
    using Key = std::pair<int, int>;

    explicit OrderedSeries(int degree_bound = 0) : degree_bound_(degree_bound) {
        if (degree_bound < 0) throw std::invalid_argument("negative degree bound");
    }

    int degree_bound() const { return degree_bound_; }
    const std::map<Key, Quaternion>& coeffs() const { return coeffs_; }

    void set(int h, int k, const Quaternion& c) {
        if (h < 0 || k < 0 || h + k > degree_bound_)
            throw std::invalid_argument("coefficient index out of degree bound");
        if (c.is_zero())
            coeffs_.erase({h, k});
        else
            coeffs_[{h, k}] = c;
    }

    Quaternion get(int h, int k) const {
        auto it = coeffs_.find({h, k});
        return it == coeffs_.end() ? Quaternion::zero() : it->second;
    }

    Quaternion eval(const Quaternion& z, const Quaternion& w) const {
        // Power tables up to the highest exponent actually present.
        int hmax = 0, kmax = 0;
        for (const auto& [key, c] : coeffs_) {
            hmax = std::max(hmax, key.first);
            kmax = std::max(kmax, key.second);
        }
        std::vector<Quaternion> zp(hmax + 1), wp(kmax + 1);
        zp[0] = Quaternion::one();
        for (int h = 1; h <= hmax; ++h) zp[h] = zp[h - 1] * z;
        wp[0] = Quaternion::one();
        for (int k = 1; k <= kmax; ++k) wp[k] = wp[k - 1] * w;

        Quaternion acc = Quaternion::zero();
        for (const auto& [key, c] : coeffs_)
            acc += zp[key.first] * wp[key.second] * c;
        return acc;
    }

    bool operator==(const OrderedSeries&) const = default;

  private:
    int degree_bound_;
    std::map<Key, Quaternion> coeffs_;
};

// Real-weighted coefficientwise combination. All inputs must share a degree
// bound so no coefficient is silently dropped.
inline OrderedSeries
linear_combine(const std::vector<std::pair<double, OrderedSeries>>& terms) {
    if (terms.empty()) throw std::invalid_argument("linear_combine: empty list");
    const int n = terms.front().second.degree_bound();
    for (const auto& [s, srs] : terms)
        if (srs.degree_bound() != n)
            throw std::invalid_argument("linear_combine: mismatched degree bounds");
    OrderedSeries out(n);
    for (const auto& [s, srs] : terms)
        for (const auto& [key, c] : srs.coeffs())
            out.set(key.first, key.second, out.get(key.first, key.second) + c * s);
    return out;
}

// Pair of ordered series: a map H^2 -> H^2.
struct SeriesMap {
    OrderedSeries first;
    OrderedSeries second;

    explicit SeriesMap(int degree_bound = 0)
        : first(degree_bound), second(degree_bound) {}
    SeriesMap(OrderedSeries f, OrderedSeries s)
        : first(std::move(f)), second(std::move(s)) {
        if (first.degree_bound() != second.degree_bound())
            throw std::invalid_argument("SeriesMap: mismatched degree bounds");
    }

    int degree_bound() const { return first.degree_bound(); }

    std::pair<Quaternion, Quaternion> eval(const Quaternion& z, const Quaternion& w) const {
        return {first.eval(z, w), second.eval(z, w)};
    }

    static SeriesMap identity(int degree_bound) {
        SeriesMap m(std::max(degree_bound, 1));
        m.first.set(1, 0, Quaternion::one());
        m.second.set(0, 1, Quaternion::one());
        return m;
    }

    bool operator==(const SeriesMap&) const = default;
};

// outer(inner(z,w)): compositions are evaluated pointwise, never expanded
// symbolically, because the composite of slice regular maps need not be
// slice regular.
inline std::pair<Quaternion, Quaternion>
compose_eval(const SeriesMap& outer, const SeriesMap& inner,
             const Quaternion& z, const Quaternion& w) {
    const auto [u, v] = inner.eval(z, w);
    return outer.eval(u, v);
}

} // namespace sliceq
