#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace rispeb {

// Reproducibility contract: one root seed lives in the Scenario, and every
// randomness consumer derives its own independent stream from
// (root seed, consumer name [, index]). Draw helpers avoid std::* distribution
// classes because their output is implementation-defined; std::mt19937_64
// itself is fully specified by the standard, so streams are portable.
//
// Registered stream names:
//   "manifold-init"   initial phase schedule of the manifold optimizer
//   "gwo"             all randomness of the grey-wolf optimizer
//   "kappa-mc"        Monte-Carlo beamforming-factor estimate
//   "random-profile"  the "random" anchor schedules in sweeps
//   "geometry-qa"     randomized test geometries

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

inline std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : engine_(seed) {}

  static RngStream derive(std::uint64_t root, std::string_view name, std::uint64_t index = 0) {
    std::uint64_t state = root ^ fnv1a64(name);
    std::uint64_t a = splitmix64(state);
    state ^= index * 0x9E3779B97F4A7C15ULL;
    std::uint64_t b = splitmix64(state);
    return RngStream(a ^ (b + 0x632BE59BD9B4E019ULL));
  }

  std::uint64_t next() { return engine_(); }

  // Uniform in [0, 1) with 53-bit resolution.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Uniform integer in [0, hi] inclusive, bias-free by rejection.
  std::uint64_t uniform_int(std::uint64_t hi) {
    if (hi == UINT64_MAX) return engine_();
    const std::uint64_t range = hi + 1;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % range;
    std::uint64_t v = engine_();
    while (v >= limit) v = engine_();
    return v % range;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace rispeb
