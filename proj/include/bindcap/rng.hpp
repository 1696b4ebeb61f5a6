#pragma once

#include <cstdint>

namespace bindcap {

/// SplitMix64 (Steele, Lea & Flood): the state advances by the 64-bit golden
/// gamma and the output is finalized with two xor-shift multiplies. Chosen
/// because it is tiny, splittable, and simple to reimplement bit-for-bit in
/// any language; every seeded result in this project is derived from it.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1) from the top 53 bits.
  double next_double() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  /// Child generator seeded with the next output. Parent and child streams
  /// are independent for practical purposes.
  SplitMix64 split() { return SplitMix64(next()); }

 private:
  std::uint64_t state_;
};

}  // namespace bindcap
