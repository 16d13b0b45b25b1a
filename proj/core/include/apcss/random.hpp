#pragma once

#include <cstdint>
#include <limits>

namespace apcss {

/// SplitMix64 finalizer: a bijective 64-bit mixer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// xoshiro256** generator. Satisfies UniformRandomBitGenerator.
///
/// Streams are keyed, not sequential: `Rng::for_stream(seed, domain, index)`
/// yields the same sequence for a given key no matter which thread or in
/// which order it is built, which is what makes parallel Monte Carlo runs
/// independent of the worker count.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed) noexcept;

  static Rng for_stream(std::uint64_t seed, std::uint64_t domain,
                        std::uint64_t index) noexcept;

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() noexcept;

  /// Uniform double in the open interval (0, 1), 53-bit resolution.
  double uniform_open() noexcept;

 private:
  std::uint64_t s_[4];
};

/// Standard normal draw via Box-Muller (one draw per call, no cached pair).
double standard_normal(Rng& rng) noexcept;

}  // namespace apcss
