#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <utility>
#include <vector>

// Deterministic, platform-independent randomness.
//
// Everything here is built on the splitmix64 finalizer so that a value can be
// produced either sequentially (SplitMix64) or by direct indexing
// (normal_at / uniform_at).  Counter addressing is what makes sharded
// experiment runs reproducible: worker count never changes which random number
// a given (seed, stream, index) triple sees.  std::normal_distribution is
// implementation-defined, hence the explicit Box-Muller below.

namespace nodallab::rng {

inline constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ull;

constexpr std::uint64_t finalize(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

/// Key for an independent stream (graph generation, per-vertex tie-breaks, ...).
constexpr std::uint64_t derive(std::uint64_t seed, std::uint64_t stream) {
    return finalize(seed ^ finalize(stream * kGamma + kGamma));
}

/// Random word at a counter position, without sequential state.
constexpr std::uint64_t word_at(std::uint64_t key, std::uint64_t counter) {
    return finalize(key + (counter + 1) * kGamma);
}

struct SplitMix64 {
    std::uint64_t state = 0;
    constexpr explicit SplitMix64(std::uint64_t s) : state(s) {}
    constexpr std::uint64_t next() { return finalize(state += kGamma); }
};

/// Map a word to [0,1) with 53 bits of precision.
constexpr double to_unit(std::uint64_t x) { return static_cast<double>(x >> 11) * 0x1.0p-53; }

/// Standard normal at counter position i (Box-Muller, cosine branch).
inline double normal_at(std::uint64_t key, std::uint64_t i) {
    const double u1 = 1.0 - to_unit(word_at(key, 2 * i));  // (0,1], keeps log finite
    const double u2 = to_unit(word_at(key, 2 * i + 1));
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

/// Unbiased integer in [0, bound) via Lemire multiply-shift rejection.
inline std::uint64_t below(SplitMix64& g, std::uint64_t bound) {
    std::uint64_t x = g.next();
    __uint128_t m = static_cast<__uint128_t>(x) * bound;
    auto lo = static_cast<std::uint64_t>(m);
    if (lo < bound) {
        const std::uint64_t t = -bound % bound;
        while (lo < t) {
            x = g.next();
            m = static_cast<__uint128_t>(x) * bound;
            lo = static_cast<std::uint64_t>(m);
        }
    }
    return static_cast<std::uint64_t>(m >> 64);
}

template <class T>
void shuffle(std::vector<T>& v, SplitMix64& g) {
    for (std::size_t i = v.size(); i > 1; --i) {
        std::swap(v[i - 1], v[below(g, i)]);
    }
}

}  // namespace nodallab::rng
