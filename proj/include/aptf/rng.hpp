// rng.hpp: counter-based pseudorandom streams
//
// SplitMix64 (Steele, Lea, Flood 2014): state advances by the golden-ratio
// increment and each output is the standard 64-bit finalizer of the state.
// A stream for (seed, index) starts at mix(seed ^ mix(index + 1)), so streams
// are independent of the order in which they are consumed.

#pragma once

#include <cstdint>

namespace aptf::rng {

inline constexpr const char* kAlgorithmName = "splitmix64";

[[nodiscard]] constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

class SplitMix64 {
public:
    explicit constexpr SplitMix64(std::uint64_t state) noexcept : state_(state) {}

    /// Stream number `index` of the family selected by `seed`.
    [[nodiscard]] static constexpr SplitMix64 stream(std::uint64_t seed, std::uint64_t index) noexcept {
        return SplitMix64(mix64(seed ^ mix64(index + 1)));
    }

    constexpr std::uint64_t next() noexcept {
        state_ += 0x9e3779b97f4a7c15ULL;
        return mix64(state_);
    }

    /// Uniform double in [0, 1) from the top 53 bits.
    constexpr double uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Uniform double in [lo, hi).
    constexpr double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }

private:
    std::uint64_t state_;
};

}  // namespace aptf::rng
