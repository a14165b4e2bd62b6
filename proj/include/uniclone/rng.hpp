#pragma once

#include <cstdint>

namespace uniclone {

// splitmix64. Used everywhere randomness is needed so that reports are
// reproducible from the recorded seed on any platform (the std <random>
// distributions are implementation-defined).
class Rng {
public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // uniform in [0, bound), bound >= 1; rejection keeps it exactly uniform
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = ~0ULL - (~0ULL % bound);
    std::uint64_t v = next();
    while (v >= limit) v = next();
    return v % bound;
  }

  int intBelow(int bound) { return static_cast<int>(below(static_cast<std::uint64_t>(bound))); }

  bool coin() { return (next() & 1) != 0; }

private:
  std::uint64_t state_;
};

} // namespace uniclone
