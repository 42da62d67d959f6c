#pragma once

#include <complex>
#include <cstdint>

namespace entlab {

/// Counter-based pseudo-random generator ("splitmix64/v1").
///
/// Output k is a fixed bijective mix of seed + k, so the stream is a pure
/// function of (seed, counter) with no hidden global state, and every draw is
/// reproducible bit-for-bit across runs and threads. Normal deviates come from
/// an in-house Box-Muller transform rather than std::normal_distribution,
/// whose output is implementation-defined.
class CounterRng {
 public:
  static constexpr const char* kName = "splitmix64/v1";

  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t seed() const { return seed_; }

  std::uint64_t next_u64() {
    std::uint64_t z = seed_ + (++counter_) * 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1).
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Standard normal deviate (Box-Muller, spare cached).
  double normal();

  /// Complex entry with independent N(0,1) real and imaginary parts.
  std::complex<double> complex_normal() {
    double re = normal();
    double im = normal();
    return {re, im};
  }

 private:
  std::uint64_t seed_ = 0;
  std::uint64_t counter_ = 0;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace entlab
