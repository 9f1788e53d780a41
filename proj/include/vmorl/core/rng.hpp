#pragma once

#include <cstdint>
#include <random>

namespace vmorl {

using Rng = std::mt19937_64;

/// Derives an independent stream seed from a base seed and a stream index.
/// SplitMix64 finalizer, so neighbouring indices give unrelated streams.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
    std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// A fresh distribution per draw keeps the stream position a pure function of
// the number of draws, independent of cached distribution state.
inline double standard_normal(Rng& rng) { return std::normal_distribution<double>(0.0, 1.0)(rng); }

inline double uniform(Rng& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

}  // namespace vmorl
