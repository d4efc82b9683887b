#pragma once

#include <cstdint>
#include <random>

#include "photocorr/core.hpp"

namespace photocorr {

// Random source with platform-independent output.
//
// The engine is std::mt19937_64, whose sequence is fixed by the standard.
// The std:: distributions are implementation-defined, so the variates are
// derived here directly from engine words.
class Rng {
 public:
  explicit Rng(RandomSeed seed) : engine_(seed.value) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform on (0, 1]; safe to take the logarithm of.
  double uniform_positive() { return (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53; }

  bool bernoulli(double p) { return uniform() < p; }

  // Exp(1) variate.
  double standard_exponential();

  // Box-Muller; the second variate of each pair is cached.
  double standard_normal();

  // Poisson(mean) by sequential inversion, split into chunks for large means.
  std::uint64_t poisson(double mean);

 private:
  std::mt19937_64 engine_;
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

}  // namespace photocorr
