#pragma once

#include <cmath>
#include <cstdint>
#include <string_view>

namespace srbench {

/// Tiny counter-based PRNG with explicitly pinned output mappings, so that
/// seeded runs replay bit-exactly regardless of standard-library internals.
struct SplitMix64 {
  std::uint64_t state = 0;

  explicit SplitMix64(std::uint64_t seed = 0) : state(seed) {}

  std::uint64_t next() noexcept {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0,1).
  double uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform double in [lo,hi).
  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [lo,hi] inclusive.
  int uniform_int(int lo, int hi) noexcept {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<int>(next() % span);
  }

  /// Standard normal via Box-Muller; consumes exactly two draws.
  double normal() noexcept {
    double u1 = uniform();
    const double u2 = uniform();
    if (u1 <= 0.0) u1 = 0x1.0p-53;
    constexpr double kTwoPi = 6.283185307179586476925286766559;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
  }

  double normal(double mean, double stddev) noexcept { return mean + stddev * normal(); }

  /// Knuth Poisson sampler; adequate for the small rates used here.
  int poisson(double rate) noexcept {
    if (rate <= 0.0) return 0;
    const double limit = std::exp(-rate);
    int k = 0;
    double p = 1.0;
    do {
      ++k;
      p *= uniform();
    } while (p > limit && k < 1024);
    return k - 1;
  }
};

/// Mixes one more value into a stream id.
inline std::uint64_t mix_stream(std::uint64_t seed, std::uint64_t value) noexcept {
  SplitMix64 rng(seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2)));
  return rng.next();
}

/// FNV-1a over a tag string; used to partition seeds into named substreams.
inline std::uint64_t hash_tag(std::string_view tag) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const char c : tag) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// Derives the RNG stream for (seed, tag, a, b); used for per-frame streams
/// so parallel and serial pipeline runs agree.
inline std::uint64_t derive_stream(std::uint64_t seed, std::string_view tag,
                                   std::uint64_t a = 0, std::uint64_t b = 0) noexcept {
  return mix_stream(mix_stream(mix_stream(seed, hash_tag(tag)), a), b);
}

}  // namespace srbench
