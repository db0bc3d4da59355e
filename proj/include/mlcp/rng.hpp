#pragma once

#include <cstdint>

namespace mlcp {

/// SplitMix64 (Steele, Lea, Flood 2014). Counter-based: output i is a pure
/// function of (seed, i), so streams are identical on every platform and
/// per-unit substreams can be derived without sharing state.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1).
  double next_double() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  /// Uniform in [0, n) via 128-bit multiply (no modulo bias worth caring
  /// about at these ranges, and bit-stable across platforms).
  std::uint64_t next_below(std::uint64_t n) {
    if (n == 0) return 0;
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next()) * n) >> 64);
  }

  /// Uniform integer in [lo, hi] inclusive.
  std::int64_t next_range(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(
                    next_below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  bool next_bernoulli(double p) { return next_double() < p; }

 private:
  std::uint64_t state_;
};

/// Stable derivation of a substream seed (e.g. per unit).
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  SplitMix64 mix(seed ^ (0xD1B54A32D192ED03ULL * (stream + 1)));
  return mix.next();
}

}  // namespace mlcp
