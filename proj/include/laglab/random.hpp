#pragma once

#include <cstdint>

namespace laglab {

/// Counter-based generator: draw i of stream `seed` depends on (seed, i) only,
/// so parallel consumers stay reproducible.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed = 0) : seed_(seed) {}

  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t bits(std::uint64_t counter) const { return mix(mix(seed_) ^ counter); }
  /// Uniform in [0, 1).
  double uniform(std::uint64_t counter) const { return double(bits(counter) >> 11) * 0x1.0p-53; }
  double uniform(std::uint64_t counter, double lo, double hi) const { return lo + (hi - lo) * uniform(counter); }

  std::uint64_t next_bits() { return bits(counter_++); }
  double next_uniform() { return uniform(counter_++); }
  double next_uniform(double lo, double hi) { return uniform(counter_++, lo, hi); }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

}  // namespace laglab
