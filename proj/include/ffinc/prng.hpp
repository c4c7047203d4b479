#pragma once

#include <cstdint>

namespace ffinc {

/// 64-bit LCG, state' = state * 6364136223846793005 + 1442695040888963407,
/// output = top 32 bits of the advanced state. Identical seeds produce
/// identical streams on every platform.
struct Prng {
    std::uint64_t state;

    explicit Prng(std::uint64_t seed) : state(seed) {}

    std::uint32_t next_u32() {
        state = state * 6364136223846793005ULL + 1442695040888963407ULL;
        return static_cast<std::uint32_t>(state >> 32);
    }

    /// Uniform draw in [0, n) via fixed-point multiply (n > 0).
    std::uint32_t next_below(std::uint32_t n) {
        return static_cast<std::uint32_t>(
            (static_cast<std::uint64_t>(next_u32()) * n) >> 32);
    }

    /// Uniform double in [0, 1).
    double next_unit() { return next_u32() * 0x1p-32; }
};

/// splitmix64 finalizer, used to derive independent sub-streams
/// from (master seed, trial index) style tuples.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a,
                                 std::uint64_t b = 0, std::uint64_t c = 0) {
    return mix64(mix64(mix64(master ^ mix64(a)) ^ mix64(b)) ^ mix64(c));
}

} // namespace ffinc
