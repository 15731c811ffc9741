#ifndef SYNAD_RNG_H_
#define SYNAD_RNG_H_

#include <cstdint>
#include <span>
#include <utility>

namespace synad {

// SplitMix64 finalizer (Steele, Lea & Flood 2014).
std::uint64_t mix64(std::uint64_t x);

// Deterministic, splittable generator.
//
// The state of stream `stream` under seed `seed` starts at
// mix64(seed ^ mix64(stream + 0x9E3779B97F4A7C15)) and advances by the
// SplitMix64 increment; every output is mix64(state). All derived variates
// (uniform, normal, bounded integers) are computed here rather than through
// <random> distributions so that sequences replay bit-for-bit on every
// platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t next_u64();
  // Uniform on [0, 1) with 53 random bits.
  double uniform();
  // Uniform on [lo, hi).
  double uniform(double lo, double hi);
  // Standard normal via Box-Muller (one value per call, no caching).
  double normal();
  // Uniform integer in [0, n); n must be positive.
  std::uint64_t below(std::uint64_t n);

  template <typename T>
  void shuffle(std::span<T> values) {
    for (std::size_t i = values.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(below(i));
      std::swap(values[i - 1], values[j]);
    }
  }

 private:
  std::uint64_t state_;
};

// Derives an independent sub-seed, e.g. for one experiment cell.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t salt);

}  // namespace synad

#endif  // SYNAD_RNG_H_
