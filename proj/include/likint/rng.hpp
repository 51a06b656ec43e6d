#pragma once

#include "likint/types.hpp"

#include <cstdint>

namespace likint::rng {

// Counter-based generator in the SplitMix64 family: the value at stream
// position k is a fixed bijective mix of (key + k * golden gamma), so a
// (seed, index) pair fully determines every draw and streams can be split
// without carrying state.

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

constexpr std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ULL;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBULL;
  z ^= z >> 31;
  return z;
}

constexpr std::uint64_t stream_key(std::uint64_t seed) {
  return mix64(seed ^ 0xD1B54A32D192ED03ULL);
}

// Value of the stream identified by `key` at position k.
constexpr std::uint64_t at(std::uint64_t key, std::uint64_t k) {
  return mix64(key + (k + 1) * kGolden);
}

// Child seed for replicate/group `idx`; children of distinct (seed, idx)
// pairs are decorrelated by the 64-bit mix.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t idx) {
  return mix64(mix64(seed + kGolden) + (idx + 1) * kGolden);
}

// Uniform double in [0, 1) from the top 53 bits.
inline double to_unit(std::uint64_t z) { return static_cast<double>(z >> 11) * 0x1.0p-53; }

// rows x cols matrix of iid N(0,1) draws (Box-Muller over the counter stream).
Matrix standard_normals(Index rows, Index cols, std::uint64_t seed);

}  // namespace likint::rng
