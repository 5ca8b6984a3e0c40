#pragma once

#include <cstdint>

namespace pixlog {

// splitmix64 generator. Used for every seeded fixture and benchmark formula so
// generated artifacts are byte-identical across platforms and standard
// libraries (std:: distributions do not guarantee that).
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t next() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, n). n must be > 0.
  uint64_t below(uint64_t n) { return next() % n; }

  int intIn(int lo, int hi) {  // inclusive bounds
    return lo + int(below(uint64_t(hi - lo + 1)));
  }

  // Uniform in [0, 1) with 53 bits.
  double unit() { return double(next() >> 11) * 0x1.0p-53; }

  bool chance(double p) { return unit() < p; }

 private:
  uint64_t state_;
};

}  // namespace pixlog
