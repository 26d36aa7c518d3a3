#pragma once

#include <cstdint>

namespace oct {

// SplitMix64: the fixed 64-bit PRNG used for every random draw in this
// project (constraint generation, property-test cases, traversal shuffles).
// Deterministic across platforms for a given seed.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, n); n > 0. Modulo bias is irrelevant at our ranges and
  // keeps the stream layout simple and reproducible.
  std::uint64_t below(std::uint64_t n) { return next() % n; }

  // Uniform integer in [lo, hi], inclusive.
  std::int64_t range(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
  }

  // Uniform in [0, 1).
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  bool coin() { return (next() & 1) != 0; }

 private:
  std::uint64_t state_;
};

// Stream seed for a (seed, trial) pair: decorrelates trials while keeping
// every draw reproducible from the two inputs alone.
inline std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial) {
  SplitMix64 s(seed ^ (0x632be59bd9b4e019ULL * (trial + 1)));
  return s.next();
}

}  // namespace oct
