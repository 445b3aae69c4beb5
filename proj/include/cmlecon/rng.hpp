#pragma once

// Seeded random number generation with a pinned algorithm (splitmix64 +
// xoshiro256++), so that a given seed produces the same stream on every
// platform and toolchain. <random> distributions are implementation-defined
// and would break the bit-identical reproducibility contract.

#include <array>
#include <cmath>
#include <cstdint>

namespace cmlecon::rng {

inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

/// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Child seed for (base, index): SplitMix counter scheme. Used to split one
/// base seed into independent per-realization / per-cell streams whose values
/// do not depend on evaluation order.
constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) noexcept {
    return mix64(base + (index + 1) * kGoldenGamma);
}

/// xoshiro256++ engine, seeded through splitmix64.
class Engine {
public:
    explicit Engine(std::uint64_t seed) noexcept {
        std::uint64_t sm = seed;
        for (auto& word : state_) {
            sm += kGoldenGamma;
            word = mix64(sm);
        }
    }

    std::uint64_t next() noexcept {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Uniform double strictly inside (0, 1).
    double uniform01() noexcept {
        return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
    }

    /// Uniform double strictly inside (lo, hi). Requires lo < hi.
    double uniform(double lo, double hi) noexcept {
        double v = lo + (hi - lo) * uniform01();
        // rounding can land on an endpoint; nudge back into the open interval
        if (v <= lo) v = std::nextafter(lo, hi);
        if (v >= hi) v = std::nextafter(hi, lo);
        return v;
    }

    /// Uniform integer in [0, bound), bound >= 1. Unbiased (mask rejection).
    std::uint64_t below(std::uint64_t bound) noexcept {
        if (bound <= 1) return 0;
        std::uint64_t mask = bound - 1;
        mask |= mask >> 1;
        mask |= mask >> 2;
        mask |= mask >> 4;
        mask |= mask >> 8;
        mask |= mask >> 16;
        mask |= mask >> 32;
        for (;;) {
            const std::uint64_t v = next() & mask;
            if (v < bound) return v;
        }
    }

private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
        return (x << k) | (x >> (64 - k));
    }

    std::array<std::uint64_t, 4> state_;
};

} // namespace cmlecon::rng
