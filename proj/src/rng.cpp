#include "tempora/rng.hpp"

#include <bit>
#include <cmath>
#include <numbers>

namespace tempora {

TrialStream::TrialStream(std::uint64_t master_seed, std::uint64_t trial) {
  const std::uint64_t key = mix64(mix64(master_seed) + (trial + 1) * kGoldenGamma);
  for (std::uint64_t n = 0; n < 4; ++n) s_[n] = mix64(key + (n + 1) * kGoldenGamma);
}

TrialStream::result_type TrialStream::operator()() {
  const std::uint64_t result = std::rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = std::rotl(s_[3], 45);
  return result;
}

double TrialStream::uniform() {
  return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
}

double TrialStream::normal() {
  if (has_cached_) {
    has_cached_ = false;
    return cached_normal_;
  }
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  cached_normal_ = r * std::sin(theta);
  has_cached_ = true;
  return r * std::cos(theta);
}

}  // namespace tempora
