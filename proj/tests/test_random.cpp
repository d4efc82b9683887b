#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "photocorr/random.hpp"

namespace photocorr {
namespace {

TEST(Rng, MatchesStandardEngineSequence) {
  // mt19937_64 output is fixed by the standard: the 10000th draw from the
  // default seed is 9981545732273789042.
  std::mt19937_64 reference;
  Rng rng(RandomSeed{std::mt19937_64::default_seed});
  for (int i = 0; i < 9999; ++i) {
    rng.next_u64();
  }
  EXPECT_EQ(rng.next_u64(), 9981545732273789042ull);
}

TEST(Rng, UniformRanges) {
  Rng rng(RandomSeed{1});
  for (int i = 0; i < 100000; ++i) {
    const double u = rng.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    const double v = rng.uniform_positive();
    ASSERT_GT(v, 0.0);
    ASSERT_LE(v, 1.0);
  }
}

TEST(Rng, ExponentialKs) {
  Rng rng(RandomSeed{2});
  std::vector<double> x(200000);
  for (auto& v : x) {
    v = rng.standard_exponential();
  }
  EXPECT_GT(testing::ks_exponential_pvalue(x, 1.0), 0.01);
}

TEST(Rng, NormalMoments) {
  Rng rng(RandomSeed{3});
  const int n = 400000;
  double s = 0.0;
  double ss = 0.0;
  for (int i = 0; i < n; ++i) {
    const double z = rng.standard_normal();
    s += z;
    ss += z * z;
  }
  EXPECT_NEAR(s / n, 0.0, 5.0 / std::sqrt(n));
  EXPECT_NEAR(ss / n, 1.0, 5.0 * std::sqrt(2.0 / n));
}

TEST(Rng, PoissonMeanAndVariance) {
  for (const double mean : {0.0, 0.3, 4.0, 75.0, 2500.0}) {
    Rng rng(RandomSeed{4});
    const int n = 20000;
    double s = 0.0;
    double ss = 0.0;
    for (int i = 0; i < n; ++i) {
      const auto k = static_cast<double>(rng.poisson(mean));
      s += k;
      ss += k * k;
    }
    const double m = s / n;
    const double var = ss / n - m * m;
    EXPECT_NEAR(m, mean, 5.0 * std::sqrt(mean / n) + 1e-12) << mean;
    if (mean > 0.0) {
      EXPECT_NEAR(var / mean, 1.0, 0.06) << mean;
    }
  }
}

}  // namespace
}  // namespace photocorr
