#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace annealsat {

// SplitMix64 finalizer.
constexpr std::uint64_t splitmix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Derives a child seed from a parent seed and a stream index. Used for
// per-read and per-instance streams so results never depend on scheduling.
constexpr std::uint64_t mixSeed(std::uint64_t parent, std::uint64_t stream) noexcept {
  return splitmix64(parent ^ splitmix64(stream + 0x632be59bd9b4e019ULL));
}

constexpr std::uint64_t mixSeed(std::uint64_t parent,
                                std::initializer_list<std::uint64_t> streams) noexcept {
  std::uint64_t s = parent;
  for (auto v : streams) s = mixSeed(s, v);
  return s;
}

using Rng = std::mt19937_64;

// Unbiased integer in [0, bound). std::uniform_int_distribution is
// implementation-defined, which would make generated instances differ
// between standard libraries; this rejection loop does not.
inline std::uint64_t uniformBelow(Rng& rng, std::uint64_t bound) {
  // 2^64 mod bound; values below it are the biased remainder.
  const std::uint64_t threshold = (0 - bound) % bound;
  std::uint64_t r;
  do {
    r = rng();
  } while (r < threshold);
  return r % bound;
}

// Uniform double in [0, 1) from the top 53 bits.
inline double uniformUnit(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline bool fairCoin(Rng& rng) { return (rng() >> 63) != 0; }

}  // namespace annealsat
