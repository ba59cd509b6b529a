#pragma once

#include <cstdint>

namespace knapqsec {

// splitmix64 stream. Used instead of std::mt19937_64 + distributions because
// its output for a given 64-bit seed is identical on every platform and
// standard library, which keeps seeded runs reproducible bit-for-bit.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Unbiased draw from [0, bound). bound must be nonzero.
  std::uint64_t bounded(std::uint64_t bound) {
    // values below 2^64 mod bound are rejected so the remainder is uniform
    std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      std::uint64_t r = next();
      if (r >= threshold) return r % bound;
    }
  }

 private:
  std::uint64_t state_;
};

// Sub-seed for trial `index` of a run seeded with `seed`. Trials draw from
// independent splitmix streams so they can be reproduced individually.
inline std::uint64_t derive_subseed(std::uint64_t seed, std::uint64_t index) {
  SplitMix64 rng(seed + 0x9e3779b97f4a7c15ULL * (index + 1));
  return rng.next();
}

}  // namespace knapqsec
