#pragma once

#include <array>
#include <cstdint>

namespace femtosim {

// splitmix64, used for seeding and stream derivation only.
struct SplitMix64 {
  std::uint64_t state;

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }
};

/// xoshiro256** stream. Hand-rolled so that sequences are identical across
/// platforms and standard libraries; every trial owns its own stream.
class Rng {
public:
  explicit Rng(std::uint64_t seed) {
    SplitMix64 sm{seed};
    for (auto& w : s_) w = sm.next();
  }

  std::uint64_t next_u64() {
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

  /// Uniform double in [0, 1).
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  bool next_bool() { return (next_u64() >> 63) != 0; }

  /// Unbiased uniform integer in [0, n). n must be nonzero.
  std::uint64_t next_below(std::uint64_t n) {
    const std::uint64_t threshold = -n % n;  // 2^64 mod n
    for (;;) {
      const std::uint64_t r = next_u64();
      if (r >= threshold) return r % n;
    }
  }

private:
  static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

  std::array<std::uint64_t, 4> s_;
};

/// Derives the seed of an independent substream from a master seed.
/// Trials, caches and the placement all get disjoint stream ids, so results
/// do not depend on the order in which streams are consumed.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream_id) {
  SplitMix64 sm{master ^ (0x9E3779B97F4A7C15ULL * (stream_id + 0x632BE59BD9B4E019ULL))};
  sm.next();
  return sm.next();
}

namespace stream {
inline constexpr std::uint64_t placement = 0x1ULL << 56;
inline constexpr std::uint64_t cache = 0x2ULL << 56;
inline constexpr std::uint64_t trial = 0x3ULL << 56;
}  // namespace stream

}  // namespace femtosim
