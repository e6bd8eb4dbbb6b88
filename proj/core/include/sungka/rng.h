#pragma once

#include <cstdint>
#include <random>

namespace sungka {

using Rng = std::mt19937_64;

// SplitMix64 finaliser; used to derive independent stream seeds.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Deterministic stream for (master seed, purpose tag, index). Distinct tags
// keep e.g. probe games and training games from sharing draws.
inline Rng make_rng(std::uint64_t seed, std::uint64_t tag = 0, std::uint64_t index = 0) {
  return Rng(mix64(mix64(mix64(seed) ^ tag) ^ index));
}

// Stream tags.
inline constexpr std::uint64_t kTagInit = 0x1001;
inline constexpr std::uint64_t kTagTrain = 0x1002;
inline constexpr std::uint64_t kTagProbe = 0x1003;
inline constexpr std::uint64_t kTagEval = 0x1004;
inline constexpr std::uint64_t kTagPlay = 0x1005;

}  // namespace sungka
