#pragma once

#include <cstdint>

namespace mgb {

/// SplitMix64 finalizer (Steele, Lea, Flood 2014).
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Counter-based substreams: trial t of a run seeded with `master` starts
/// from state mix64(mix64(master) ^ mix64(t + 1)) and advances as SplitMix64,
/// state += 0x9e3779b97f4a7c15, output = mix64(state). Any two trials are
/// independent of execution order and of which worker runs them.
class RandomStream {
public:
    static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

    explicit constexpr RandomStream(std::uint64_t state) noexcept : state_(state) {}

    static constexpr RandomStream substream(std::uint64_t master, std::uint64_t trial) noexcept {
        return RandomStream(mix64(mix64(master) ^ mix64(trial + 1)));
    }

    constexpr std::uint64_t next() noexcept {
        state_ += kGamma;
        return mix64(state_);
    }

    /// (next() >> 11) * 2^-53, in [0, 1).
    constexpr double uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// ((next() >> 11) + 0.5) * 2^-53, in (0, 1).
    constexpr double uniform_open() noexcept { return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53; }

    /// Top bit of next(): true means negative.
    constexpr bool sign_bit() noexcept { return (next() >> 63) != 0; }

    constexpr std::uint64_t state() const noexcept { return state_; }

private:
    std::uint64_t state_;
};

}  // namespace mgb
