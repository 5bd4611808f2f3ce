#pragma once

#include <cstdint>
#include <random>

#include "infharm/expr/rational.hpp"

namespace infharm {

/// splitmix64 finalizer; used to derive independent stream seeds.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30U)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27U)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31U);
}

/// Seed of the stream for trial `index` of a campaign seeded with `seed`.
constexpr std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index) noexcept {
  return mix64(mix64(seed) ^ mix64(index + 0x632be59bd9b4e019ULL));
}

/// mt19937_64 with bounded draws defined by rejection sampling on the raw
/// 64-bit output, so sequences are identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [lo, hi].
  long uniform(long lo, long hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    const std::uint64_t limit = (~std::uint64_t{0} / span) * span;
    std::uint64_t r = 0;
    do {
      r = engine_();
    } while (r >= limit);
    return lo + static_cast<long>(r % span);
  }

  /// True with probability num/den.
  bool chance(long num, long den) { return uniform(0, den - 1) < num; }

  /// p/q with |p| <= bound and 1 <= q <= bound.
  expr::Rational rational(long bound = 8) { return expr::Rational(uniform(-bound, bound), uniform(1, bound)); }

  expr::Rational nonzero_rational(long bound = 8) {
    for (;;) {
      const long p = uniform(-bound, bound);
      if (p != 0) return expr::Rational(p, uniform(1, bound));
    }
  }

  /// p/q in [-1, 1] with 1 <= q <= max_den.
  expr::Rational unit_rational(long max_den = 64) {
    const long q = uniform(1, max_den);
    return expr::Rational(uniform(-q, q), q);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace infharm
