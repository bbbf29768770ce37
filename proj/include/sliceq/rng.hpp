#pragma once

#include <cstdint>
#include <random>

#include "sliceq/quaternion.hpp"

namespace sliceq {

// Seeded sampling helpers. Every stochastic routine in the library takes an
// explicit seed so runs are reproducible.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    double uniform(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(gen_);
    }
    double normal() { return std::normal_distribution<double>(0.0, 1.0)(gen_); }

    Quaternion quaternion_box(double half_width = 1.0) {
        return {uniform(-half_width, half_width), uniform(-half_width, half_width),
                uniform(-half_width, half_width), uniform(-half_width, half_width)};
    }

    // Uniform direction on S^3 scaled to |q| in [r_lo, r_hi].
    Quaternion quaternion_shell(double r_lo, double r_hi) {
        Quaternion q;
        do {
            q = {normal(), normal(), normal(), normal()};
        } while (q.norm() < 1e-3);
        const double r = uniform(r_lo, r_hi);
        return q * (r / q.norm());
    }

    // Random imaginary unit (point of S^2).
    Quaternion imaginary_unit() {
        Quaternion q;
        double n;
        do {
            q = {0.0, normal(), normal(), normal()};
            n = q.norm();
        } while (n < 1e-3);
        return q / n;
    }

    std::mt19937_64& engine() { return gen_; }

  private:
    std::mt19937_64 gen_;
};

} // namespace sliceq
