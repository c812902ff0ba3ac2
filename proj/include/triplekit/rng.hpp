#pragma once

#include <cstdint>

namespace triplekit {

// SplitMix64. Hand-rolled so that the same seed yields the same stream on
// every platform and standard library; std:: distributions do not give that.
struct SplitMix64 {
  std::uint64_t state;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1), 53 bits.
  double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform in [-1, 1).
  double next_symmetric() { return 2.0 * next_unit() - 1.0; }

  // Uniform integer in [lo, hi], inclusive. Modulo bias is irrelevant at the
  // ranges used here.
  long next_int(long lo, long hi) {
    return lo + static_cast<long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }

  bool next_bool() { return (next() & 1u) != 0; }

  // Derive an independent stream for a sub-draw.
  std::uint64_t fork() { return next() ^ 0xa5a5a5a5deadbeefULL; }
};

}  // namespace triplekit
