#pragma once

#include <cstdint>

namespace hx {

// hx-splitmix64-v1.
//
// SplitMix64 (Steele, Lea, Vigna): the state advances by a fixed odd gamma
// and each output is a bijective finalizer of the state, so the stream is
// random-access: output i of seed s is mix(s + (i+1)*gamma). Generators and
// instance builders consume draws by combination rank (lexicographic edge
// order), which keeps every instance bit-reproducible across platforms,
// thread counts, and any other language implementing the same contract.
inline constexpr std::uint64_t kSplitMixGamma = 0x9e3779b97f4a7c15ULL;

constexpr std::uint64_t splitmix_mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

class SplitMix64 {
 public:
  explicit constexpr SplitMix64(std::uint64_t seed) : state_(seed) {}

  constexpr std::uint64_t next() {
    state_ += kSplitMixGamma;
    return splitmix_mix(state_);
  }

  // The index-th output of the stream seeded with `seed`.
  static constexpr std::uint64_t at(std::uint64_t seed, std::uint64_t index) {
    return splitmix_mix(seed + (index + 1) * kSplitMixGamma);
  }

  // Derive the seed of an independent labelled substream.
  static constexpr std::uint64_t split(std::uint64_t seed, std::uint64_t label) {
    return splitmix_mix(seed ^ splitmix_mix(label + 0x632be59bd9b4e019ULL));
  }

  static constexpr double to_unit(std::uint64_t x) {
    return static_cast<double>(x >> 11) * 0x1.0p-53;
  }

  double next_unit() { return to_unit(next()); }

  // Unbiased draw in [0, bound) by power-of-two mask rejection.
  std::uint64_t next_below(std::uint64_t bound) {
    if (bound <= 1) return 0;
    std::uint64_t mask = bound - 1;
    mask |= mask >> 1;
    mask |= mask >> 2;
    mask |= mask >> 4;
    mask |= mask >> 8;
    mask |= mask >> 16;
    mask |= mask >> 32;
    std::uint64_t x;
    do {
      x = next() & mask;
    } while (x >= bound);
    return x;
  }

 private:
  std::uint64_t state_;
};

}  // namespace hx
