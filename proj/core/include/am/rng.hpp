#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace am {

// Counter-based 64-bit generator (SplitMix64). Seeding is free, so every
// bootstrap replicate and study replication gets its own derived stream.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed) : state_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~std::uint64_t{0}; }

  result_type operator()() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

// Stream key for (seed, index), e.g. one stream per replicate.
inline std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t index) {
  Rng g(seed ^ (0x9e3779b97f4a7c15ull * (index + 1)));
  std::uint64_t a = g();
  return a ^ g();
}

// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(Rng& g) {
  return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

// Uniform draw from {0, ..., n-1}; multiply-shift, bias below 2^-64.
inline std::size_t uniform_index(Rng& g, std::size_t n) {
  return static_cast<std::size_t>(
      (static_cast<unsigned __int128>(g()) * n) >> 64);
}

// Standard normal draw (Box-Muller, cosine branch only).
inline double normal(Rng& g) {
  double u1 = uniform01(g);
  double u2 = uniform01(g);
  if (u1 <= 0.0) u1 = 0x1.0p-53;
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace am
