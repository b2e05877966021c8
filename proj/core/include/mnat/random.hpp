#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <random>

namespace mnat {

/// Seeded random stream used throughout the bandit and adversarial
/// simulations. Streams are derived from a master seed and an id path
/// (trial, phase, role, ...) so that independent trials can run in
/// parallel while staying bit-reproducible.
///
/// Gaussian and uniform draws are generated from raw 64-bit engine
/// output rather than std:: distributions, which keeps observed
/// sequences stable across standard-library versions.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : engine_(mix(seed)) {}

    /// Stream for (master, id_0, id_1, ...). Distinct paths give
    /// statistically independent streams.
    static RandomStream derive(std::uint64_t master, std::initializer_list<std::uint64_t> path) {
        std::uint64_t h = mix(master);
        for (std::uint64_t id : path) {
            h = mix(h ^ (id + 0x9e3779b97f4a7c15ULL));
        }
        return RandomStream(h);
    }

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform double in [0, 1).
    double uniform01() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform double in [-1, 1]; zero-mean, hence 1-sub-Gaussian.
    double uniform_pm1() { return 2.0 * uniform01() - 1.0; }

    /// Zero-mean gaussian via Box-Muller (no second-value cache).
    double gaussian(double sigma) {
        const double u1 = 1.0 - uniform01(); // (0, 1]
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        return sigma * r * std::cos(2.0 * 3.14159265358979323846 * u2);
    }

    /// Uniform integer in [0, n). n must be positive.
    std::uint64_t uniform_below(std::uint64_t n) {
        // Rejection sampling on the top bits keeps the draw unbiased.
        const std::uint64_t limit = n * ((~std::uint64_t{0}) / n);
        std::uint64_t x;
        do {
            x = next_u64();
        } while (x >= limit);
        return x % n;
    }

private:
    // splitmix64 finalizer; also used for seed derivation.
    static std::uint64_t mix(std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::mt19937_64 engine_;
};

} // namespace mnat
