#pragma once

#include <cstdint>

namespace stayset {

/// SplitMix64 (Steele, Lea & Flood; the generator behind Java's
/// SplittableRandom). Small, fast, and fully specified, which makes runs
/// reproducible byte-for-byte. Independent streams are obtained by spacing
/// initial states with the 64-bit golden-ratio increment.
class SplitMix64 {
 public:
  static constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ull;

  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  /// The i-th stream under a master seed (used per simulated trajectory).
  static SplitMix64 stream(std::uint64_t seed, std::uint64_t index) {
    return SplitMix64(seed + (index + 1) * kGoldenGamma);
  }

  std::uint64_t next() {
    std::uint64_t z = (state_ += kGoldenGamma);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, bound) by rejection-free multiply-shift.
  std::uint64_t next_below(std::uint64_t bound) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next()) * bound) >> 64);
  }

 private:
  std::uint64_t state_;
};

}  // namespace stayset
