#pragma once

#include <cstdint>
#include <random>

namespace ccstream {

// All randomness in the library flows through this header so that a run is
// reproducible from its 64-bit seed alone, independent of platform and
// standard-library vendor. The generator is std::mt19937_64 (fully specified
// by the C++ standard); bounded integers and unit doubles are derived by
// hand because std::uniform_*_distribution is implementation-defined.
inline constexpr const char* kGeneratorName = "mt19937_64";

// SplitMix64 step, used for seed derivation (Steele et al., "Fast splittable
// pseudorandom number generators").
inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Derives a child seed from a base seed and an index (run number, stream
/// number, ...). Distinct (base, index) pairs give decorrelated seeds.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  std::uint64_t s = base ^ (0x510e527fade682d1ULL + index * 0x9e3779b97f4a7c15ULL);
  splitmix64(s);
  return splitmix64(s);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  /// Uniform integer in [0, bound). Rejection sampling, so unbiased for any
  /// bound. bound must be nonzero.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = std::uint64_t(-1) - std::uint64_t(-1) % bound;
    std::uint64_t x;
    do {
      x = gen_();
    } while (x >= limit);
    return x % bound;
  }

  /// Uniform double in [0, 1) built from the top 53 bits.
  double unit() { return double(gen_() >> 11) * 0x1.0p-53; }

  /// True with probability p. Always consumes exactly one draw.
  bool bernoulli(double p) { return unit() < p; }

 private:
  std::mt19937_64 gen_;
};

}  // namespace ccstream
