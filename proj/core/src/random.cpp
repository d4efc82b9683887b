#include "photocorr/random.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace photocorr {

double Rng::standard_exponential() { return -std::log(uniform_positive()); }

double Rng::standard_normal() {
  if (has_cached_normal_) {
    has_cached_normal_ = false;
    return cached_normal_;
  }
  const double radius = std::sqrt(-2.0 * std::log(uniform_positive()));
  const double angle = 2.0 * std::numbers::pi * uniform();
  cached_normal_ = radius * std::sin(angle);
  has_cached_normal_ = true;
  return radius * std::cos(angle);
}

std::uint64_t Rng::poisson(double mean) {
  if (!(mean >= 0.0) || !std::isfinite(mean)) {
    throw std::invalid_argument("Poisson mean must be finite and non-negative");
  }
  // Poisson is additive, so a large mean is drawn as a sum of small ones to
  // keep exp(-mean) well away from underflow.
  constexpr double kChunk = 30.0;
  std::uint64_t total = 0;
  while (mean > 0.0) {
    const double m = mean > kChunk ? kChunk : mean;
    mean -= m;
    double p = std::exp(-m);
    double cdf = p;
    const double u = uniform();
    std::uint64_t k = 0;
    while (u >= cdf) {
      ++k;
      p *= m / static_cast<double>(k);
      cdf += p;
      if (p == 0.0) {
        break;  // cdf rounded short of 1
      }
    }
    total += k;
  }
  return total;
}

}  // namespace photocorr
