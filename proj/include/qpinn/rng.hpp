#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace qpinn {

// All randomness in the project flows from a single 64-bit seed. Derived
// streams are keyed by integer tuples (e.g. (seed, n_qubits, depth, sample))
// so that parallel evaluation order cannot change any drawn value.

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t mix_seed(std::initializer_list<std::uint64_t> parts) {
    std::uint64_t s = 0x243f6a8885a308d3ULL;
    for (std::uint64_t p : parts) s = splitmix64(s ^ p);
    return s;
}

inline std::mt19937_64 make_rng(std::initializer_list<std::uint64_t> parts) {
    return std::mt19937_64(mix_seed(parts));
}

// Uniform draw on [0, 1) built directly from the top 53 bits of the engine
// output; identical across platforms for a fixed engine state.
inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Uniform draw on [lo, hi).
inline double uniform(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * uniform01(rng);
}

}  // namespace qpinn
