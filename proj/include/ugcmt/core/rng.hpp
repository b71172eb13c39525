#pragma once

#include <cstdint>

namespace ugcmt {

/// Counter-based random source: every draw is a pure function of the seed
/// and a tuple of counters, so results do not depend on evaluation order or
/// thread count. Mixing uses the SplitMix64 finalizer.
class CounterRng {
 public:
  explicit constexpr CounterRng(std::uint64_t seed) noexcept : seed_(seed) {}

  constexpr std::uint64_t seed() const noexcept { return seed_; }

  constexpr std::uint64_t bits(std::uint64_t a, std::uint64_t b = 0,
                               std::uint64_t c = 0,
                               std::uint64_t d = 0) const noexcept {
    std::uint64_t h = mix(seed_ ^ 0x243F6A8885A308D3ULL);
    h = mix(h ^ a);
    h = mix((h + 0x9E3779B97F4A7C15ULL) ^ b);
    h = mix((h + 0xBF58476D1CE4E5B9ULL) ^ c);
    h = mix((h + 0x94D049BB133111EBULL) ^ d);
    return h;
  }

  /// Uniform double in [0, 1) with 53 random bits.
  constexpr double uniform(std::uint64_t a, std::uint64_t b = 0,
                           std::uint64_t c = 0,
                           std::uint64_t d = 0) const noexcept {
    return static_cast<double>(bits(a, b, c, d) >> 11) * 0x1.0p-53;
  }

  /// Uniform integer in [0, n). n must be > 0.
  constexpr std::uint64_t below(std::uint64_t n, std::uint64_t a,
                                std::uint64_t b = 0, std::uint64_t c = 0,
                                std::uint64_t d = 0) const noexcept {
    // Lemire multiply-shift; bias is below 2^-64 * n.
    __extension__ using u128 = unsigned __int128;
    const u128 m = static_cast<u128>(bits(a, b, c, d)) * n;
    return static_cast<std::uint64_t>(m >> 64);
  }

  static constexpr std::uint64_t mix(std::uint64_t z) noexcept {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t seed_;
};

/// Stream identifiers keep independent uses of one seed apart.
namespace rng_stream {
inline constexpr std::uint64_t kCaseNoise = 0x11;
inline constexpr std::uint64_t kTokenReplace = 0x21;
inline constexpr std::uint64_t kVariantPick = 0x22;
inline constexpr std::uint64_t kRegexRule = 0x23;
inline constexpr std::uint64_t kShuffle = 0x31;
}  // namespace rng_stream

}  // namespace ugcmt
