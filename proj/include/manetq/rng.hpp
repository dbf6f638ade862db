#pragma once

// Deterministic, platform-independent random streams.
//
// Algorithm (part of the reproducibility contract):
//   * mix64 is the SplitMix64 output function.
//   * The stream for trial t under seed s is xoshiro256** whose four state
//     words are the first four outputs of SplitMix64 started at
//     s ^ mix64(t).
//   * uniform() = (next() >> 11) * 2^-53, in [0, 1).

#include <array>
#include <bit>
#include <cstdint>

namespace manetq {

constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

class SplitMix64 {
 public:
  explicit constexpr SplitMix64(std::uint64_t state) noexcept : state_(state) {}

  constexpr std::uint64_t next() noexcept {
    state_ += 0x9E3779B97F4A7C15ULL;
    return mix64(state_);
  }

 private:
  std::uint64_t state_;
};

class Xoshiro256ss {
 public:
  explicit constexpr Xoshiro256ss(std::uint64_t seed) noexcept {
    SplitMix64 sm(seed);
    for (auto& w : s_) w = sm.next();
  }

  static constexpr Xoshiro256ss for_trial(std::uint64_t seed, std::uint64_t trial) noexcept {
    return Xoshiro256ss(seed ^ mix64(trial));
  }

  constexpr std::uint64_t next() noexcept {
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

  constexpr double uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::array<std::uint64_t, 4> s_{};
};

}  // namespace manetq
