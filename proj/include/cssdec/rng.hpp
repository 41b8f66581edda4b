#pragma once

#include <cstdint>

namespace cssdec {

// Counter-based deterministic generator (splitmix64 core). Streams derived
// from (seed, stream) pairs are independent of scheduling order, so
// Monte-Carlo trials reproduce exactly regardless of thread count.
class Rng {
 public:
  Rng() = default;
  explicit Rng(std::uint64_t seed) : state_(mix(seed ^ 0x9e3779b97f4a7c15ULL)) {}

  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Child stream for (trial, purpose) tags; deterministic in its arguments.
  Rng child(std::uint64_t tag) const {
    Rng r;
    r.state_ = mix(state_ ^ mix(tag ^ 0xd1b54a32d192ed03ULL));
    return r;
  }

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return uniform() < p; }

 private:
  std::uint64_t state_ = 0x853c49e6748fea9bULL;
};

}  // namespace cssdec
