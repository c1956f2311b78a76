#pragma once

#include <cstdint>
#include <initializer_list>
#include <vector>

namespace jroc {

/// 64-bit mixing finalizer (SplitMix64 constants). Used for seeding and for
/// deriving independent seeds from a master seed plus an index path.
///
/// z ^= z >> 30; z *= 0xBF58476D1CE4E5B9; z ^= z >> 27;
/// z *= 0x94D049BB133111EB; z ^= z >> 31;
inline std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ULL;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBULL;
  z ^= z >> 31;
  return z;
}

/// Deterministic seed derivation: h0 = mix64(master), then for each path
/// element v: h = mix64(h ^ (v + 0x9E3779B97F4A7C15)). Any runtime with
/// 64-bit integers reproduces the same stream.
inline std::uint64_t derive_seed(std::uint64_t master,
                                 std::initializer_list<std::uint64_t> path) {
  std::uint64_t h = mix64(master);
  for (std::uint64_t v : path) {
    h = mix64(h ^ (v + 0x9E3779B97F4A7C15ULL));
  }
  return h;
}

/// xorshift64* generator (Marsaglia xorshift with a multiplicative output
/// scramble). Update:
///   x ^= x >> 12; x ^= x << 25; x ^= x >> 27; output = x * 0x2545F4914F6CDD1D
/// The state is seeded through mix64 so that any 64-bit seed (including 0)
/// yields a valid non-zero state.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(mix64(seed)) {
    if (state_ == 0) state_ = 0x9E3779B97F4A7C15ULL;
  }

  std::uint64_t next_u64() {
    std::uint64_t x = state_;
    x ^= x >> 12;
    x ^= x << 25;
    x ^= x >> 27;
    state_ = x;
    return x * 0x2545F4914F6CDD1DULL;
  }

  /// Uniform double in [0, 1) with 53 significant bits.
  double next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform integer in [0, bound), bound >= 1. Rejection sampling, no
  /// modulo bias, identical on every platform.
  std::uint64_t next_below(std::uint64_t bound) {
    const std::uint64_t threshold = -bound % bound;  // 2^64 mod bound
    for (;;) {
      std::uint64_t r = next_u64();
      if (r >= threshold) return r % bound;
    }
  }

  /// In-place Fisher-Yates shuffle, iterating from the back.
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(next_below(i));
      using std::swap;
      swap(v[i - 1], v[j]);
    }
  }

 private:
  std::uint64_t state_;
};

}  // namespace jroc
