#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>

#include "least/error.hpp"

namespace least {

/// Seedable pseudo-random stream backing every stochastic decision.
///
/// The generator is xoshiro256** (Blackman & Vigna) with its 256-bit state
/// expanded from the 64-bit seed by SplitMix64. Both are defined purely in
/// terms of 64-bit unsigned arithmetic, so a given seed produces the same
/// sequence on every platform and compiler. Uniform reals take the top 53
/// bits of one output: u = (x >> 11) * 2^-53, u in [0, 1).
///
/// A stream is a single-consumer object. Copying it forks an identical
/// replay of the remaining sequence.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) noexcept;

    std::uint64_t seed() const noexcept { return seed_; }

    /// Raw 64-bit output. Every other draw consumes exactly one of these.
    std::uint64_t next_u64() noexcept;

    /// Uniform real in [0, 1).
    double uniform01() noexcept;

    /// Uniform real in [lo, hi).
    double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform01(); }

    /// Uniform index in [0, count). `count` must be positive.
    std::size_t index(std::size_t count);

    /// Number of raw outputs consumed so far.
    std::uint64_t draws() const noexcept { return draws_; }

private:
    std::uint64_t seed_;
    std::array<std::uint64_t, 4> state_{};
    std::uint64_t draws_ = 0;
};

/// True with probability p. Consumes exactly one draw.
bool bernoulli(RandomStream& stream, double p);

/// Picks one element uniformly. Consumes exactly one draw.
template <typename T>
const T& uniform_choice(RandomStream& stream, std::span<const T> items) {
    if (items.empty()) throw InvalidArgument("uniform_choice: empty item list");
    return items[stream.index(items.size())];
}

} // namespace least
