#pragma once

#include <cstdint>
#include <random>

namespace comb {

// SplitMix64 finalizer; used for seed derivation so that logically distinct
// random streams never share a generator state.
inline uint64_t splitmix64(uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Derived stream id: stream `tag` of a base seed. The mapping is fixed and
// documented here because reproducibility of any published run depends on it:
//   derived(base, tag) = splitmix64(base XOR (tag + 1) * 0x9E3779B97F4A7C15).
inline uint64_t derive_seed(uint64_t base, uint64_t tag) {
  return splitmix64(base ^ ((tag + 1) * 0x9E3779B97F4A7C15ULL));
}

// Stream tags used across the codebase. A trial with seed s draws its layer
// graphs from derive_seed(s, kLayerBase + i), etc.
namespace seed_tag {
inline constexpr uint64_t kLayerBase = 0;   // layers use kLayerBase + {0,1,2}
inline constexpr uint64_t kSpine = 8;       // spine layer in full-comb mode
inline constexpr uint64_t kFirstStep = 16;  // random block placement
inline constexpr uint64_t kFill = 24;       // fill-in tie-breaking
}  // namespace seed_tag

// Per-trial seed inside a batch: trial t of probe/point g under base seed b.
// Counter-hash split so any single trial is re-runnable in isolation.
inline uint64_t trial_seed(uint64_t base, uint64_t group, uint64_t index) {
  return splitmix64(base ^ splitmix64((group << 32) | (index & 0xFFFFFFFFULL)));
}

// Thin deterministic wrapper around mt19937_64. The standard fully specifies
// the mt19937_64 output sequence, and the double/int conversions below avoid
// the unspecified std::uniform_*_distribution algorithms, so identical seeds
// give identical streams on any conforming platform.
class Rng {
 public:
  explicit Rng(uint64_t seed) : gen_(splitmix64(seed)) {}

  uint64_t next_u64() { return gen_(); }

  // Uniform in [0, 1), 53-bit resolution.
  double next_double() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  // Uniform in (0, 1]; safe as a log() argument.
  double next_double_pos() {
    return (static_cast<double>(gen_() >> 11) + 1.0) * 0x1.0p-53;
  }

  // Uniform integer in [0, n); n must be positive. Rejection sampling keeps
  // the result exactly uniform and the stream deterministic.
  uint64_t below(uint64_t n) {
    uint64_t threshold = (0 - n) % n;
    for (;;) {
      uint64_t r = gen_();
      if (r >= threshold) return r % n;
    }
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace comb
