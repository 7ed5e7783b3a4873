#pragma once

#include <cmath>
#include <cstdint>

namespace ccl {

// Deterministic, portable random stream used everywhere in the library.
// No std:: distribution or engine is used anywhere: their outputs are
// implementation-defined, which would break bit-reproducibility of runs.
//
// Algorithm (documented so a trace can be reproduced by hand):
//   * Seeding: four rounds of splitmix64 starting from the 64-bit seed
//     produce the xoshiro256++ state s[0..3].
//       splitmix64: z = (state += 0x9E3779B97F4A7C15)
//                   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//                   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//                   return z ^ (z >> 31)
//   * Stream: xoshiro256++ (Blackman & Vigna reference constants)
//       result = rotl(s[0] + s[3], 23) + s[0]
//       t = s[1] << 17; s[2]^=s[0]; s[3]^=s[1]; s[1]^=s[2]; s[0]^=s[3];
//       s[2]^=t; s[3] = rotl(s[3], 45)
//   * uniform01(): (next_u64() >> 11) * 2^-53, in [0, 1).
//   * uniform(a, b): a + (b - a) * uniform01().
//   * normal(): Box-Muller on two uniform01() draws u1, u2 (u1 nudged to
//     2^-53 if zero): r = sqrt(-2 ln u1); returns r*cos(2*pi*u2) first and
//     caches r*sin(2*pi*u2) for the next call. Draws therefore consume the
//     underlying stream in pairs.
//   * bounded(n): Lemire multiply-shift, high 64 bits of next_u64() * n.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (auto& word : s_) word = splitmix64(sm);
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // Uniform double in [0, 1), 53 significant bits.
  double uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform(double a, double b) { return a + (b - a) * uniform01(); }

  // Standard normal via Box-Muller; generated in pairs (see class comment).
  double normal() {
    if (have_cached_) {
      have_cached_ = false;
      return cached_;
    }
    double u1 = uniform01();
    const double u2 = uniform01();
    if (u1 <= 0.0) u1 = 0x1.0p-53;
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * kPi * u2;
    cached_ = r * std::sin(theta);
    have_cached_ = true;
    return r * std::cos(theta);
  }

  // Unbiased-enough bounded draw (Lemire multiply-shift); n > 0.
  std::uint64_t bounded(std::uint64_t n) {
    const auto wide =
        static_cast<unsigned __int128>(next_u64()) * static_cast<unsigned __int128>(n);
    return static_cast<std::uint64_t>(wide >> 64);
  }

  // One seeding round; also usable standalone for seed derivation.
  static std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

 private:
  static constexpr double kPi = 3.141592653589793238462643383279502884;

  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t s_[4] = {};
  double cached_ = 0.0;
  bool have_cached_ = false;
};

// Derives an independent child seed from (parent seed, tag words).
// Documented derivation: fold each tag word into a splitmix64 state with the
// golden-ratio constant and take one splitmix64 output per fold; the final
// output is the child seed. Used for per-direction, per-edge and per-run
// streams so that results never depend on scheduling order.
inline std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t tag) {
  std::uint64_t state = parent;
  (void)Rng::splitmix64(state);  // decorrelate from the raw parent
  state ^= tag + 0x9E3779B97F4A7C15ULL + (state << 6) + (state >> 2);
  return Rng::splitmix64(state);
}

inline std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t tag_a,
                                 std::uint64_t tag_b) {
  return derive_seed(derive_seed(parent, tag_a), tag_b);
}

inline std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t tag_a,
                                 std::uint64_t tag_b, std::uint64_t tag_c) {
  return derive_seed(derive_seed(parent, tag_a, tag_b), tag_c);
}

}  // namespace ccl
