#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace cuniform {

// All random draws in the project flow through these helpers. The engine is
// the standard mt19937_64 (its output sequence is pinned by the C++ standard);
// the distributions are written out explicitly because std:: distribution
// objects are implementation-defined and would break cross-toolchain
// reproducibility of batches and policy files.
using Rng = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

inline Rng make_rng(std::uint64_t seed) { return Rng(splitmix64(seed)); }

// Independent deterministic stream for item `index` under a batch seed.
// Streams are stable in `index`, so a K-trajectory batch is a prefix of the
// (K+1)-trajectory batch drawn under the same seed.
inline Rng substream(std::uint64_t seed, std::uint64_t index) {
  return Rng(splitmix64(seed ^ splitmix64(index + 1)));
}

// Uniform double in [0, 1), 53 random bits.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Standard normal via Box-Muller; stateless, two engine draws per variate.
inline double normal01(Rng& rng) {
  double u1 = uniform01(rng);
  double u2 = uniform01(rng);
  // u1 == 0 would take log(0); nudge to the smallest representable draw.
  if (u1 <= 0.0) u1 = 0x1.0p-53;
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace cuniform
