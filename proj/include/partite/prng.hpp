#pragma once

#include <cstdint>

namespace partite {

/// SplitMix64 generator. Small state, full 64-bit output, and trivial to
/// seed-split, which is what suite trials and search restarts need: every
/// worker derives its own stream from (seed, index) and results do not
/// depend on scheduling order.
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Uniform integer in [0, bound), bound > 0. Multiply-shift reduction;
    /// bias is below 2^-64 per draw, and the mapping is platform-independent.
    std::uint64_t below(std::uint64_t bound) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next()) * bound) >> 64);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    bool chance(double p) { return unit() < p; }
};

/// Seed for the index-th independent substream of a run seed.
inline std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index) {
    SplitMix64 mixer(seed ^ (0xD1B54A32D192ED03ull * (index + 1)));
    return mixer.next();
}

} // namespace partite
