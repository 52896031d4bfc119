// rng.hpp
// Deterministic splittable random number generation. Every stochastic
// routine in the library draws from a SplitMix64 stream seeded through
// derive_seed, so identical seeds reproduce identical results bit for bit
// across runs and platforms (no std::*_distribution, whose output is
// implementation-defined).

#pragma once

#include <complex>
#include <cmath>
#include <cstdint>

namespace qwalk {

// SplitMix64 finalizer; also usable as a standalone hash.
inline std::uint64_t split_mix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Sub-seed for stream (base, index): seed XOR hash(index), re-mixed.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
    return split_mix(base ^ split_mix(index));
}

inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b) {
    return derive_seed(derive_seed(base, a), b);
}

class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t x = state_;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

    // Uniform in [0, 1), 53-bit resolution.
    double uniform01() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    // Uniform in (0, 1]; safe as a log argument.
    double uniform01_open() {
        return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53;
    }

    // Uniform integer in [0, bound); masked rejection, unbiased.
    std::uint64_t below(std::uint64_t bound) {
        std::uint64_t mask = ~0ULL >> __builtin_clzll(bound | 1);
        for (;;) {
            std::uint64_t v = next() & mask;
            if (v < bound) return v;
        }
    }

    // Standard normal via Box-Muller.
    double gaussian() {
        double u1 = uniform01_open();
        double u2 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    }

    // Re and Im each standard normal.
    std::complex<double> complex_gaussian() {
        double u1 = uniform01_open();
        double u2 = uniform01();
        double r = std::sqrt(-2.0 * std::log(u1));
        return {r * std::cos(2.0 * M_PI * u2), r * std::sin(2.0 * M_PI * u2)};
    }

private:
    std::uint64_t state_;
};

} // namespace qwalk
