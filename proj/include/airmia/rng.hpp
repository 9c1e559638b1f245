#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <utility>
#include <vector>

namespace airmia {

using Engine = std::mt19937_64;

// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x) noexcept;

// FNV-1a, used to turn a stream name into a key.
std::uint64_t hash_tag(std::string_view tag) noexcept;

// Independent random substream keyed by (seed, tag, index). Every sample of a
// dataset gets its own substream, so generation order (serial or parallel)
// does not affect the output.
Engine substream(std::uint64_t seed, std::string_view tag, std::uint64_t index = 0);

// Uniform draw on [lo, hi]; returns lo when the interval is degenerate.
double uniform(Engine& rng, double lo, double hi);

// Unbiased integer in [0, n); n must be positive.
std::uint64_t uniform_index(Engine& rng, std::uint64_t n);

// Fisher-Yates with uniform_index, portable across standard libraries.
template <typename T>
void shuffle_in_place(std::vector<T>& v, Engine& rng)
{
    for (std::size_t i = v.size(); i > 1; --i) {
        const auto j = static_cast<std::size_t>(uniform_index(rng, i));
        std::swap(v[i - 1], v[j]);
    }
}

}  // namespace airmia
