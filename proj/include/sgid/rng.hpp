#pragma once

#include <cstdint>

namespace sgid {

/** Counter-based pseudo-random stream with a 64-bit seed.
 *
 *  Block i of the stream keyed by (seed, stream) is
 *
 *      mix(key + i * 0x9E3779B97F4A7C15)
 *
 *  where mix is the splitmix64 finalizer (Steele/Lea/Flood) and
 *  key = mix(seed ^ mix(stream ^ 0xA0761D6478BD642F)).  Because every value is
 *  a pure function of (seed, stream, counter), per-trial substreams are
 *  reproducible regardless of thread count or scheduling: trial t always uses
 *  CounterRng(seed, t).
 */
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream)
      : key_(mix(seed ^ mix(stream ^ 0xA0761D6478BD642FULL))) {}

  std::uint64_t next_u64() { return mix(key_ + (ctr_++) * 0x9E3779B97F4A7C15ULL); }

  /// Uniform double in [0, 1) with 53 random mantissa bits.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, n), unbiased (multiply-shift with rejection).
  std::uint64_t next_below(std::uint64_t n) {
    // Lemire's method: accept unless the low product word lands in the biased zone.
    unsigned __int128 m = static_cast<unsigned __int128>(next_u64()) * n;
    auto lo = static_cast<std::uint64_t>(m);
    if (lo < n) {
      const std::uint64_t threshold = (0 - n) % n;
      while (lo < threshold) {
        m = static_cast<unsigned __int128>(next_u64()) * n;
        lo = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  /// Uniform integer in [lo, hi] inclusive.
  std::int64_t next_in(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(next_below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t key_;
  std::uint64_t ctr_ = 0;
};

}  // namespace sgid
