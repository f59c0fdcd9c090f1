#pragma once

#include <cstdint>

namespace covarr {

// All randomness in the library flows through this generator (SplitMix64),
// so a given seed produces the same stream on every platform and compiler.
// Substreams are derived by hashing (seed, a, b, c) tuples, which makes draws
// independent of evaluation order and thread count.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t next_u64() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Unbiased draw from [0, n) by rejection sampling.
  uint64_t below(uint64_t n) {
    if (n <= 1) return 0;
    const uint64_t threshold = (0 - n) % n;  // 2^64 mod n
    uint64_t x = next_u64();
    while (x < threshold) x = next_u64();
    return x % n;
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  static uint64_t mix(uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Substream seed for the (a, b, c) counter position under a master seed.
  static uint64_t derive(uint64_t seed, uint64_t a, uint64_t b = 0, uint64_t c = 0) {
    uint64_t h = mix(seed + 0x9e3779b97f4a7c15ULL);
    h = mix(h ^ (a + 0xbf58476d1ce4e5b9ULL));
    h = mix(h ^ (b + 0x94d049bb133111ebULL));
    h = mix(h ^ (c + 0x2545f4914f6cdd1dULL));
    return h;
  }

 private:
  uint64_t state_;
};

}  // namespace covarr
