#pragma once

#include <cstdint>

namespace algc {

// SplitMix64 stream. Used for every random draw in the project so that
// results do not depend on libstdc++ distribution internals and stay
// reproducible across platforms and compilers.
class SplitMix64 {
 public:
  explicit SplitMix64(uint64_t seed) : state_(seed) {}

  uint64_t next() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // uniform in [0, 1), 53 significant bits
  double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // uniform in [-0.5, 0.5)
  double next_centered() { return next_unit() - 0.5; }

  // uniform integer in [0, bound), bound > 0, no modulo bias
  uint64_t next_below(uint64_t bound) {
    const uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const uint64_t r = next();
      if (r >= threshold) return r % bound;
    }
  }

 private:
  uint64_t state_;
};

// Deterministic derivation of sub-stream seeds (per test vector, per
// hierarchy level, per benchmark run).
inline uint64_t mix_seed(uint64_t base, uint64_t salt) {
  SplitMix64 g(base ^ (salt * 0xd1b54a32d192ed03ULL + 0x8cb92ba72f3d8dd7ULL));
  return g.next();
}

}  // namespace algc
