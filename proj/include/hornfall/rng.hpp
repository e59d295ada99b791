#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <initializer_list>
#include <vector>

namespace hornfall {

// splitmix64 step: advances state and returns the next output.
// Used for seed expansion and for hashing seed tuples; the algorithm is
// fixed so that identical seeds reproduce identical streams everywhere.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Hash of a seed tuple via splitmix64 chaining; order-sensitive.
inline std::uint64_t mix_seed(std::initializer_list<std::uint64_t> parts) {
  std::uint64_t state = 0x8e1f7c1d2b3a5f77ULL;
  std::uint64_t out = 0;
  for (std::uint64_t p : parts) {
    state ^= p + 0x9e3779b97f4a7c15ULL + (state << 6) + (state >> 2);
    out = splitmix64(state);
  }
  return out;
}

// xoshiro256** by Blackman and Vigna, seeded through splitmix64.
// All sampling in the library flows through this engine so that a 64-bit
// seed pins every generated formula bit-for-bit.
class Xoshiro256ss {
 public:
  explicit Xoshiro256ss(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (auto& word : s_) word = splitmix64(sm);
  }

  std::uint64_t next() {
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

  // Unbiased integer in [0, bound); bound must be nonzero.
  // Rejection in the top window keeps the draw exactly uniform.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t threshold = -bound % bound;
    for (;;) {
      const std::uint64_t r = next();
      if (r >= threshold) return r % bound;
    }
  }

  // Uniform double in [0,1) with 53 random bits.
  double real01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }
  std::array<std::uint64_t, 4> s_;
};

// Floyd's algorithm: uniform random j-subset of {lo, ..., hi}, returned
// sorted ascending. Exactly uniform over all C(hi-lo+1, j) subsets.
inline std::vector<std::uint32_t> sample_subset(std::uint32_t lo,
                                                std::uint32_t hi,
                                                std::uint32_t j,
                                                Xoshiro256ss& rng) {
  std::vector<std::uint32_t> out;
  out.reserve(j);
  for (std::uint32_t t = hi - j + 1; t <= hi; ++t) {
    const std::uint32_t r =
        lo + static_cast<std::uint32_t>(rng.below(t - lo + 1));
    bool present = false;
    for (std::uint32_t v : out) {
      if (v == r) {
        present = true;
        break;
      }
    }
    out.push_back(present ? t : r);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace hornfall
