#pragma once

#include <cstdint>
#include <limits>

namespace tempora {

/// SplitMix64 output finaliser (Stafford variant 13).
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline constexpr std::uint64_t kGoldenGamma = 0x9e3779b97f4a7c15ULL;

/// Per-trial random stream.
///
/// Derivation (frozen; changing it changes every sweep result):
///   key   = mix64(mix64(master_seed) + (trial + 1) * kGoldenGamma)
///   s[n]  = mix64(key + (n + 1) * kGoldenGamma), n = 0..3
/// i.e. key is output `trial` of a SplitMix64 generator seeded with
/// mix64(master_seed), and the xoshiro256** state is the first four SplitMix64
/// outputs seeded with key. Draws then follow xoshiro256**.
///
/// Doubles are (x >> 11) * 2^-53 in [0, 1); normals use Box-Muller on two
/// doubles, returning the cosine branch first and caching the sine branch.
class TrialStream {
 public:
  using result_type = std::uint64_t;

  TrialStream(std::uint64_t master_seed, std::uint64_t trial);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()();

  /// Uniform in [0, 1).
  double uniform();
  /// Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Standard normal.
  double normal();

 private:
  std::uint64_t s_[4];
  double cached_normal_ = 0.0;
  bool has_cached_ = false;
};

}  // namespace tempora
