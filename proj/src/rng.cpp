#include "airmia/rng.hpp"

namespace airmia {

std::uint64_t mix64(std::uint64_t x) noexcept
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t hash_tag(std::string_view tag) noexcept
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : tag) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

Engine substream(std::uint64_t seed, std::string_view tag, std::uint64_t index)
{
    const std::uint64_t key = mix64(mix64(mix64(seed) ^ hash_tag(tag)) ^ index);
    std::seed_seq seq{static_cast<std::uint32_t>(key), static_cast<std::uint32_t>(key >> 32)};
    return Engine(seq);
}

double uniform(Engine& rng, double lo, double hi)
{
    if (!(hi > lo)) return lo;
    // Explicit transform instead of std::uniform_real_distribution so the
    // stream is identical across standard libraries.
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
}

std::uint64_t uniform_index(Engine& rng, std::uint64_t n)
{
    const std::uint64_t limit = Engine::max() - Engine::max() % n;
    std::uint64_t r = rng();
    while (r >= limit) r = rng();
    return r % n;
}

}  // namespace airmia
