#pragma once

#include <cstdint>
#include <random>

#include "abelaut/bigint.hpp"

namespace abelaut {

/// Seeded source of uniform integers.
///
/// Stable contract: the raw stream is std::mt19937_64 seeded with the given
/// value (its output sequence is fixed by the C++ standard), and bounded
/// draws use masked rejection sampling over that stream, so the same seed
/// produces the same values on every platform and standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform in [0, bound). bound must be positive.
  BigInt uniform_below(const BigInt& bound) {
    if (bound <= 1) return 0;
    const BigInt top = bound - 1;
    const unsigned bits = static_cast<unsigned>(boost::multiprecision::msb(top)) + 1;
    const unsigned words = (bits + 63) / 64;
    const unsigned spare = words * 64 - bits;
    for (;;) {
      BigInt v = 0;
      for (unsigned w = 0; w < words; ++w) {
        std::uint64_t chunk = engine_();
        if (w == 0 && spare) chunk >>= spare;
        v = (v << 64) | chunk;
      }
      if (v < bound) return v;
    }
  }

  /// Uniform in [lo, hi].
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(uniform_below(BigInt(hi) - lo + 1));
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace abelaut
