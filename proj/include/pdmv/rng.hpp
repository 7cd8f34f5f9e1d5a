#pragma once

#include "pdmv/field.hpp"

#include <cstdint>
#include <string>

namespace pdmv {

/// Deterministic generator (splitmix64).  All randomness in the verifier
/// flows through this type so that a seed pins every draw, independent of
/// platform library implementations.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed ^ 0x9e3779b97f4a7c15ull) {}

  uint64_t next() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  /// uniform in [lo, hi] inclusive
  long long uniform(long long lo, long long hi) {
    return lo + static_cast<long long>(next() % static_cast<uint64_t>(hi - lo + 1));
  }

  /// small nonzero rational, numerator in [-num_max, num_max], denominator in [1, den_max]
  Rat rat_nonzero(long long num_max, long long den_max) {
    long long n = 0;
    while (n == 0) n = uniform(-num_max, num_max);
    return make_rat(n, uniform(1, den_max));
  }

  Rat rat(long long num_max, long long den_max) {
    return make_rat(uniform(-num_max, num_max), uniform(1, den_max));
  }

  static uint64_t mix(uint64_t seed, const std::string& tag) {
    uint64_t h = 0xcbf29ce484222325ull ^ seed;
    for (char c : tag) {
      h ^= static_cast<unsigned char>(c);
      h *= 0x100000001b3ull;
    }
    return h;
  }

 private:
  uint64_t state_;
};

}  // namespace pdmv
