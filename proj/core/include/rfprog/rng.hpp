#pragma once

#include <cstdint>

namespace rfprog {

// Counter-based deterministic generator keyed by (seed, stream_a, stream_b).
// The same key always yields the same sequence, independent of platform,
// thread count, and call site -- experiment records are replayable from
// their keys alone.
class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t stream_a, std::uint64_t stream_b)
        : state_(mix(mix(mix(seed + kGamma) ^ stream_a) ^ stream_b)) {}

    std::uint64_t next() {
        state_ += kGamma;
        return mix(state_);
    }

    // Uniform in [0, 1) with 53 random bits.
    double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Uniform in [0, bound).
    std::uint32_t next_below(std::uint32_t bound) {
        return static_cast<std::uint32_t>(next() % bound);
    }

    // +1 or -1 with equal probability.
    int next_sign() { return (next() & 1) ? 1 : -1; }

private:
    static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::uint64_t state_;
};

}  // namespace rfprog
