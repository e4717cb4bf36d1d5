#pragma once

#include <cstdint>

namespace qsym {

// 64-bit finalizer used for seed derivation (splitmix64 mixing function).
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Derives an independent per-sample seed from (master seed, stream tag, sample index).
// Counter-based: the value depends only on the three inputs, so any partitioning of
// sample indices across workers reproduces the same stream.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream, std::uint64_t index) {
    std::uint64_t h = mix64(master ^ 0x8e2f9d1377c16e35ULL);
    h = mix64(h ^ stream);
    h = mix64(h ^ index);
    return h;
}

// Fixed project-wide generator: splitmix64. Small state, portable output,
// adequate statistical quality for Monte Carlo at desk scale. The generator
// choice is part of the reproducibility contract; changing it changes every
// seeded result.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, bound) by rejection; unbiased for any bound >= 1.
    std::uint64_t next_below(std::uint64_t bound) {
        const std::uint64_t limit = bound * (UINT64_MAX / bound);
        std::uint64_t x;
        do {
            x = next();
        } while (x >= limit);
        return x % bound;
    }

    // Uniform double in [0, 1) with 53 random bits.
    double next_unit() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

private:
    std::uint64_t state_;
};

}  // namespace qsym
