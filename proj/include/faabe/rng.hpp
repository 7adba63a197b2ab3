#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "faabe/errors.hpp"

// Deterministic randomness kit. Every random decision in the library flows
// through these primitives so that results are identical across platforms,
// compilers, and any internal parallelism:
//
//   * the engine is std::mt19937_64, whose output sequence is fixed by the
//     C++ standard for a given seed;
//   * distributions are hand-rolled here because the std::uniform_* adapters
//     are implementation-defined and would break cross-toolchain determinism;
//   * independent substreams are derived from one master seed by hashing, so
//     evaluation order cannot leak randomness between consumers.

namespace faabe {

using rng_engine = std::mt19937_64;

// Fast 64-bit mixing function (Vigna's splitmix64 finalizer); used only for
// seed derivation, never as the main generator.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Independent substream seed for (master, tag); mixing twice keeps
// correlated master/tag pairs from producing correlated seeds.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t tag) {
    return splitmix64(splitmix64(master) ^ tag);
}

// Uniform double in [0, 1) built from the top 53 bits; exactly representable
// and identical everywhere.
inline double uniform_unit(rng_engine& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Uniform integer in [0, n) by rejection from below; unbiased for every n.
// The threshold is 2^64 mod n, computed in wrapping arithmetic.
inline std::uint64_t uniform_index(rng_engine& rng, std::uint64_t n) {
    if (n == 0) throw internal_error("uniform_index: n must be positive");
    const std::uint64_t threshold = (0 - n) % n;
    for (;;) {
        const std::uint64_t x = rng();
        if (x >= threshold) return x % n;
    }
}

// Fisher-Yates shuffle, iterating from the back; one uniform_index draw per
// step, so the consumed stream length is len-1 draws (plus rejections).
template <typename T>
void shuffle(std::vector<T>& v, rng_engine& rng) {
    for (std::size_t i = v.size(); i > 1; --i) {
        const std::uint64_t j = uniform_index(rng, i);
        std::swap(v[i - 1], v[j]);
    }
}

}  // namespace faabe
