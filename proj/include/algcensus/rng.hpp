#pragma once

#include <cstdint>

#include "algcensus/rational.hpp"

namespace algcensus {

/// Deterministic seeded generator (splitmix64). Reports carry their seed,
/// and per-trial streams are derived so parallel schedules cannot change
/// the sampled values.
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [lo, hi] (inclusive); plain modulo reduction, which is
    /// deterministic and unbiased enough for test sampling.
    long range(long lo, long hi) {
        if (hi < lo) throw validation_error("SplitMix64::range: empty range");
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<long>(next() % span);
    }

    bool coin() { return (next() & 1) != 0; }
};

/// Stream for trial i derived from a base seed; stable across schedules.
inline SplitMix64 derived_stream(std::uint64_t seed, std::uint64_t trial) {
    SplitMix64 mix(seed ^ (0x51c64b5fe31accb5ULL * (trial + 1)));
    mix.next();
    return mix;
}

}  // namespace algcensus
