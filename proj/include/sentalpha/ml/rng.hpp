#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace sentalpha::ml {

using Rng = std::mt19937_64;

// Mixes a parent seed with a stream name and index into an independent child
// seed, so every random consumer (smote, bootstrap, forest, ...) gets its own
// reproducible substream of the single run seed.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t parent, std::string_view stream, std::uint64_t index = 0) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
  for (char c : stream) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return splitmix64(splitmix64(parent ^ h) + index);
}

inline Rng make_rng(std::uint64_t parent, std::string_view stream, std::uint64_t index = 0) {
  return Rng{derive_seed(parent, stream, index)};
}

// Uniform double in [0, 1).
inline double uniform01(Rng& rng) noexcept { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

// Uniform integer in [0, n), n > 0.
inline std::size_t uniform_index(Rng& rng, std::size_t n) noexcept {
  return static_cast<std::size_t>(std::uniform_int_distribution<std::uint64_t>(0, n - 1)(rng));
}

}  // namespace sentalpha::ml
