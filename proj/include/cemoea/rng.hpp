#pragma once

#include <cstdint>
#include <limits>
#include <random>

namespace cemoea {

/// Counter-based generator (SplitMix64). The state is a plain counter, so
/// a stream can be positioned anywhere in O(1) and independent sub-streams
/// are obtained by keying the counter with stream ids.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t key = 0, std::uint64_t counter = 0)
      : key_(mix(key)), counter_(counter) {}

  /// Independent stream derived from a seed and a list of stream ids.
  static Rng stream(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
    return Rng(mix(mix(seed ^ kGolden) + a * kStreamA) ^ (b * kStreamB));
  }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() { return mix(key_ + (++counter_) * kGolden); }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, n).
  std::size_t index(std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(*this);
  }

  double normal() { return normal_(*this); }

  std::uint64_t counter() const { return counter_; }

  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  static constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
  static constexpr std::uint64_t kStreamA = 0xd1b54a32d192ed03ULL;
  static constexpr std::uint64_t kStreamB = 0x8cb92ba72f3d8dd7ULL;

  std::uint64_t key_;
  std::uint64_t counter_;
  std::normal_distribution<double> normal_;
};

}  // namespace cemoea
