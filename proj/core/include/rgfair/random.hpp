#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace rgfair {

/// SplitMix64 step; used for seeding and stream derivation.
constexpr std::uint64_t splitMix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// xoshiro256** (Blackman & Vigna). Output is fully specified by the seed, so
/// streams reproduce bit-for-bit on every platform, unlike the std
/// distributions layered on top of std engines.
class Xoshiro256StarStar {
public:
  using result_type = std::uint64_t;

  static constexpr const char* kName = "xoshiro256**";

  explicit constexpr Xoshiro256StarStar(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (auto& word : state_) {
      word = splitMix64(sm);
    }
  }

  /// Independent substream for (seed, stream, substream); the simulator uses
  /// stream = k and substream = trial index.
  static constexpr Xoshiro256StarStar forStream(std::uint64_t seed, std::uint64_t stream,
                                                std::uint64_t substream) {
    std::uint64_t mix = seed;
    std::uint64_t derived = splitMix64(mix);
    mix = derived ^ stream;
    derived = splitMix64(mix);
    mix = derived ^ substream;
    return Xoshiro256StarStar(splitMix64(mix));
  }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  constexpr result_type operator()() {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  /// Uniform double in [0, 1) from the top 53 bits.
  constexpr double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  /// Bernoulli(p): exactly one draw per call; p = 0 never and p = 1 always
  /// succeeds.
  constexpr bool bernoulli(double p) { return uniform() < p; }

private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

  std::array<std::uint64_t, 4> state_{};
};

} // namespace rgfair
