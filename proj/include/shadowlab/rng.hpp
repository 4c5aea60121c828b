#ifndef SHADOWLAB_RNG_HPP
#define SHADOWLAB_RNG_HPP

#include <cmath>
#include <cstdint>

#include <Eigen/Dense>

namespace shadowlab {

/// splitmix64 followed by xoshiro256** keeps every seeded experiment
/// bit-reproducible across platforms; std:: distributions are
/// implementation-defined and must not be used anywhere in the library.
class Rng {
public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t x = seed;
        for (auto& s : state_) {
            x += 0x9e3779b97f4a7c15ULL;
            std::uint64_t z = x;
            z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
            z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
            s = z ^ (z >> 31);
        }
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Uniform in [0, 1).
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n) { return next_u64() % n; }

    /// Standard normal via Box-Muller (deterministic, no cached spare).
    double normal() {
        double u1 = uniform01(), u2 = uniform01();
        if (u1 < 1e-300) u1 = 1e-300;
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    }

    /// Uniform direction on the unit sphere in R^n.
    Eigen::VectorXd direction(int n) {
        Eigen::VectorXd v(n);
        double norm2 = 0.0;
        do {
            for (int i = 0; i < n; ++i) v[i] = normal();
            norm2 = v.squaredNorm();
        } while (norm2 < 1e-12);
        return v / std::sqrt(norm2);
    }

    /// Uniform in the open ball of given radius in R^n.
    Eigen::VectorXd in_ball(int n, double radius) {
        const double r = radius * std::pow(uniform01(), 1.0 / n);
        return r * direction(n);
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }
    std::uint64_t state_[4];
};

}  // namespace shadowlab

#endif
