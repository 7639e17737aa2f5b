// Deterministic randomness for the sampling oracle.
//
// Books are sampled with std::mt19937_64 (bit-exact across platforms per
// the standard); uniforms come from the top 53 bits of each output, never
// from std::uniform_real_distribution, whose mapping is implementation
// defined. Replicate i of a Monte-Carlo run reseeds from
// splitmix64_at(master_seed, i) — the i-th output of the splitmix64
// sequence started at master_seed — so replicates are reproducible and
// independent of evaluation order.
#pragma once

#include <cstdint>
#include <random>

namespace capsim {

// Finalizer of the splitmix64 sequence step.
inline std::uint64_t splitmix64_mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// i-th output (0-based) of splitmix64 seeded with `seed`.
inline std::uint64_t splitmix64_at(std::uint64_t seed, std::uint64_t i) {
    return splitmix64_mix(seed + (i + 1) * 0x9E3779B97F4A7C15ull);
}

inline std::uint64_t replicate_seed(std::uint64_t master_seed, std::uint64_t replicate) {
    return splitmix64_at(master_seed, replicate);
}

// Uniform in [0, 1) with 53-bit resolution; strictly below 1, so an
// acceptance test u < p always fires for p = 1.
inline double uniform53(std::mt19937_64& eng) {
    return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

}  // namespace capsim
