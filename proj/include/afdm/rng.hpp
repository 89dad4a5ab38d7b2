#pragma once

#include <cstdint>
#include <random>

#include "afdm/types.hpp"

namespace afdm {

// splitmix64 finalizer; used to derive independent per-trial streams.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

// mt19937_64 with the distributions written out explicitly, so a seed gives
// the same samples with any standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }
  double uniform();                       // [0, 1)
  double uniform(double lo, double hi);   // [lo, hi)
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);  // inclusive
  double normal();                        // N(0, 1)
  Complex complex_normal(double variance);  // CN(0, variance)

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace afdm
