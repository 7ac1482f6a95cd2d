#pragma once

#include <cstdint>
#include <random>

namespace opf {

// splitmix64 finalizer; good enough to decorrelate per-item streams.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// One independent generator per (seed, item). Parallel suite kernels draw
// from these, so the schedule cannot influence any sampled value.
inline std::mt19937_64 item_rng(std::uint64_t seed, std::uint64_t item) {
  return std::mt19937_64(mix64(mix64(seed) ^ mix64(item + 1)));
}

inline std::uint64_t pick(std::mt19937_64& rng, std::uint64_t n) {
  return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(rng);
}

}  // namespace opf
