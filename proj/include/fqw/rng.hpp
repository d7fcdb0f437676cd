#pragma once

// Seed derivation and the splitmix64 counter stream used by randomized
// splitting. Streams depend only on their seed material.

#include <cstdint>
#include <span>

namespace fqw {

inline std::uint64_t splitmix64(std::uint64_t& state)
{
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// FNV-1a over 32-bit words, finished with a splitmix step.
inline std::uint64_t hash_words(std::uint64_t seed, std::span<const std::uint32_t> words, std::uint64_t tag)
{
    std::uint64_t h = 0xCBF29CE484222325ULL ^ seed;
    auto feed = [&h](std::uint64_t v) {
        for (int i = 0; i < 8; ++i) {
            h ^= (v >> (8 * i)) & 0xFF;
            h *= 0x100000001B3ULL;
        }
    };
    feed(words.size());
    for (std::uint32_t w : words)
        feed(w);
    feed(tag);
    return splitmix64(h);
}

class SplitMix {
public:
    explicit SplitMix(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next() { return splitmix64(state_); }
    /// Uniform in [0, n) for n >= 1, by rejection.
    std::uint64_t below(std::uint64_t n)
    {
        const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
        for (;;) {
            const std::uint64_t v = next();
            if (v < limit)
                return v % n;
        }
    }

private:
    std::uint64_t state_;
};

} // namespace fqw
