#ifndef IMCAUG_UTIL_RNG_HPP
#define IMCAUG_UTIL_RNG_HPP

#include <cstdint>

namespace imcaug {

// SplitMix64. Used everywhere a reproducible stream is needed; std::
// distributions are not byte-stable across standard libraries.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t next() {
    state_ += 0x9e3779b97f4a7c15ULL;
    uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, n). Modulo bias is irrelevant for our uses.
  uint64_t below(uint64_t n) { return n == 0 ? 0 : next() % n; }

  // Uniform in [lo, hi] inclusive.
  uint64_t range(uint64_t lo, uint64_t hi) { return lo + below(hi - lo + 1); }

  bool chance(unsigned percent) { return below(100) < percent; }

  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  uint64_t state_;
};

}  // namespace imcaug

#endif
