#include "apcss/random.hpp"

#include <cmath>
#include <numbers>

namespace apcss {
namespace {

constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
  return (x << k) | (x >> (64 - k));
}

}  // namespace

Rng::Rng(std::uint64_t seed) noexcept {
  std::uint64_t z = seed;
  for (auto& word : s_) {
    word = mix64(z);
    z += 0x9e3779b97f4a7c15ULL;
  }
}

Rng Rng::for_stream(std::uint64_t seed, std::uint64_t domain,
                    std::uint64_t index) noexcept {
  return Rng(mix64(mix64(mix64(seed) ^ domain) ^ index));
}

Rng::result_type Rng::operator()() noexcept {
  const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double Rng::uniform_open() noexcept {
  // (m + 0.5) / 2^53 for m in [0, 2^53): never exactly 0 or 1.
  const std::uint64_t m = (*this)() >> 11;
  return (static_cast<double>(m) + 0.5) * 0x1.0p-53;
}

double standard_normal(Rng& rng) noexcept {
  const double u1 = rng.uniform_open();
  const double u2 = rng.uniform_open();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace apcss
