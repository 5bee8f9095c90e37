#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace binfar {

// SplitMix64 evaluated in counter mode. The value at position i of stream s is
//
//   out(i) = finalize(base(seed, s) + (i + 1) * GOLDEN)
//
// with the standard SplitMix64 finalizer, so the sequence depends only on
// (seed, stream, position) and is reproducible regardless of which thread
// draws it. Streams split by hashing the stream index into the base state;
// replication loops give each replication its own stream index.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream)
      : base_(finalize(seed + kGolden) ^ finalize(stream * kGolden + kStreamSalt)) {}

  std::uint64_t next_u64() {
    counter_ += 1;
    return finalize(base_ + counter_ * kGolden);
  }

  // Uniform on [0,1), 53-bit resolution.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform on (0,1), both ends open; safe inside log() and logit().
  double next_double_open() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

  // Unbiased integer on {0, ..., bound-1} (Lemire's multiply-shift rejection).
  std::uint64_t uniform_int(std::uint64_t bound) {
    const std::uint64_t threshold = (-bound) % bound;
    for (;;) {
      const unsigned __int128 m =
          static_cast<unsigned __int128>(next_u64()) * static_cast<unsigned __int128>(bound);
      if (static_cast<std::uint64_t>(m) >= threshold) {
        return static_cast<std::uint64_t>(m >> 64);
      }
    }
  }

  // Standard normal via Box-Muller; the second value of each pair is cached.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = next_double_open();
    const double u2 = next_double();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  // Logistic with zero mean and unit variance (scale sqrt(3)/pi).
  double logistic_unit_variance() {
    const double u = next_double_open();
    return kLogisticScale * std::log(u / (1.0 - u));
  }

 private:
  static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;
  static constexpr std::uint64_t kStreamSalt = 0x632BE59BD9B4E019ull;
  static constexpr double kLogisticScale = 0.5513288954217920;  // sqrt(3)/pi

  static std::uint64_t finalize(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ull;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBull;
    z ^= z >> 31;
    return z;
  }

  std::uint64_t base_;
  std::uint64_t counter_ = 0;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace binfar
