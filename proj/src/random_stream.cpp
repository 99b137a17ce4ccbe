#include "least/random_stream.hpp"

#include <bit>
#include <string>

namespace least {

namespace {

std::uint64_t splitmix64(std::uint64_t& x) noexcept {
    std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

} // namespace

RandomStream::RandomStream(std::uint64_t seed) noexcept : seed_(seed) {
    std::uint64_t sm = seed;
    for (auto& word : state_) word = splitmix64(sm);
}

std::uint64_t RandomStream::next_u64() noexcept {
    auto& s = state_;
    const std::uint64_t result = std::rotl(s[1] * 5, 7) * 9;
    const std::uint64_t t = s[1] << 17;
    s[2] ^= s[0];
    s[3] ^= s[1];
    s[1] ^= s[2];
    s[0] ^= s[3];
    s[2] ^= t;
    s[3] = std::rotl(s[3], 45);
    ++draws_;
    return result;
}

double RandomStream::uniform01() noexcept { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

std::size_t RandomStream::index(std::size_t count) {
    if (count == 0) throw InvalidArgument("RandomStream::index: count must be positive");
    const auto i = static_cast<std::size_t>(uniform01() * static_cast<double>(count));
    return i < count ? i : count - 1;
}

bool bernoulli(RandomStream& stream, double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument("bernoulli: probability " + std::to_string(p) + " outside [0,1]");
    return stream.uniform01() < p;
}

} // namespace least
