#pragma once

#include <cstdint>

namespace gwd {

/// SplitMix64 (Steele, Lea & Flood 2014): a 64-bit counter passed through a
/// bijective mixing function. Cheap to construct, so every realization gets its
/// own generator keyed by (seed, index) and parallel runs are order-independent.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t state) : state_(state) {}

    std::uint64_t next() {
        state_ += 0x9e3779b97f4a7c15ULL;
        return mix(state_);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    static constexpr std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Independent stream for one realization.
    static SplitMix64 substream(std::uint64_t seed, std::uint64_t index) {
        return SplitMix64(mix(seed ^ mix(index + 0x632be59bd9b4e019ULL)));
    }

private:
    std::uint64_t state_;
};

}  // namespace gwd
