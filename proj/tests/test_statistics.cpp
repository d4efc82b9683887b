#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "photocorr/statistics.hpp"

namespace photocorr {
namespace {

// Summary with counts chosen so that every rate is count / T.
CountSummary from_rates(double seconds, double r_a, double r_b, double r_bp, double r_ab,
                        double r_abp, double r_abbp, Picoseconds window) {
  auto n = [&](double r) { return static_cast<std::uint64_t>(std::llround(r * seconds)); };
  CountSummary s;
  s.n_a = n(r_a);
  s.n_b = n(r_b);
  s.n_bprime = n(r_bp);
  s.n_ab = n(r_ab);
  s.n_abprime = n(r_abp);
  s.n_abbprime = n(r_abbp);
  s.duration = seconds_to_ps(seconds);
  s.window = window;
  return s;
}

TEST(Alpha2d, RateFormExamples) {
  EXPECT_NEAR(alpha_2d_from_rates(14800, 16700, 223, 10e-9), 90.2, 0.05);
  EXPECT_NEAR(alpha_2d_from_rates(43800, 48600, 843, 60e-9), 6.6, 0.005);
  EXPECT_EQ(alpha_2d_from_rates(10, 10, 0, 1e-9), 0.0);
  EXPECT_THROW(alpha_2d_from_rates(0, 10, 0, 1e-9), UndefinedStatistic);
}

TEST(Alpha2d, CountFormEqualsRateForm) {
  std::mt19937_64 gen(1);
  for (int i = 0; i < 1000; ++i) {
    CountSummary s;
    s.n_a = 1 + gen() % 1000000;
    s.n_b = 1 + gen() % 1000000;
    s.n_ab = gen() % std::min(s.n_a, s.n_b);
    s.duration = 1 + static_cast<Picoseconds>(gen() % (100 * kPicosPerSecond));
    s.window = 2 * (1 + static_cast<Picoseconds>(gen() % 100000));
    const double counts = alpha_2d(s);
    const double rates =
        alpha_2d_from_rates(s.rate(s.n_a), s.rate(s.n_b), s.rate(s.n_ab), s.window_seconds());
    ASSERT_NEAR(counts, rates, 1e-12 * std::max(1.0, std::fabs(rates)));
  }
}

TEST(Alpha2d, ZeroSinglesUndefined) {
  CountSummary s;
  s.n_a = 10;
  s.duration = kPicosPerSecond;
  s.window = 10000;
  EXPECT_THROW(alpha_2d(s), UndefinedStatistic);
  s.n_bprime = 5;
  s.n_bbprime = 0;
  EXPECT_THROW(alpha_2d(s, ChannelPair::BBprime), UndefinedStatistic);
  s.n_b = 5;
  EXPECT_EQ(alpha_2d(s, ChannelPair::BBprime), 0.0);
}

TEST(Alpha3d, Examples) {
  EXPECT_NEAR(alpha_3d_from_rates(14800, 128, 95, 0.016), 0.0195, 0.00005);
  EXPECT_NEAR(alpha_3d_from_rates(45600, 431, 325, 0.34), 0.1107, 0.00005);
  const auto s = from_rates(600, 14800, 8000, 8000, 128, 95, 0.0, 10000);
  EXPECT_EQ(alpha_3d(s), 0.0);
  auto z = s;
  z.n_abprime = 0;
  EXPECT_THROW(alpha_3d(z), UndefinedStatistic);
}

TEST(Violation, Examples) {
  EXPECT_NEAR(violation_sigma(0.019, 0.012), 81.75, 0.005);
  EXPECT_NEAR(violation_sigma(0.097, 0.023), 39.26, 0.01);
  EXPECT_EQ(violation_sigma(1.0, 0.3), 0.0);
  EXPECT_LT(violation_sigma(1.9, 0.1), 0.0);
  EXPECT_THROW(violation_sigma(0.5, 0.0), UndefinedStatistic);
}

TEST(IdealAlpha, Examples) {
  EXPECT_NEAR(ideal_alpha_2d(14800, 10e-9), 6757, 0.5);
  EXPECT_NEAR(ideal_alpha_2d(14800, 10e-9) * 0.04, 270, 0.5);
  EXPECT_DOUBLE_EQ(ideal_alpha_2d(1, 1), 1.0);
  EXPECT_THROW(ideal_alpha_2d(0, 1), std::invalid_argument);
  EXPECT_THROW(ideal_alpha_2d(1, -1), std::invalid_argument);
}

TEST(PoissonUncertainty, EqualCounts) {
  CountSummary s{100, 100, 100, 100, 100, 100, 100, kPicosPerSecond, 10000};
  EXPECT_NEAR(poisson_alpha_uncertainty(s, DetectorMode::ThreeDetector), 0.2 * alpha_3d(s), 1e-12);
  EXPECT_NEAR(poisson_alpha_uncertainty(s, DetectorMode::TwoDetector),
              std::sqrt(0.03) * alpha_2d(s), 1e-9);
  s.n_abbprime = 0;
  EXPECT_THROW(poisson_alpha_uncertainty(s, DetectorMode::ThreeDetector), UndefinedStatistic);
}

TEST(PoissonUncertainty, HeraldedRowOverTenMinutes) {
  // Unrounded counts: N_ABB' = 0.016 * 600 = 9.6.
  const double inv = 1 / 9.6 + 1 / (128.0 * 600) + 1 / (95.0 * 600) + 1 / (14800.0 * 600);
  EXPECT_NEAR(std::sqrt(inv), 0.33, 0.01);
  EXPECT_GT((1 / 9.6) / inv, 0.99);  // the three-fold count dominates
  const auto s = from_rates(600, 14800, 8000, 8000, 128, 95, 0.016, 10000);  // N_ABB' = 10
  const double rel = poisson_alpha_uncertainty(s, DetectorMode::ThreeDetector) / alpha_3d(s);
  EXPECT_NEAR(rel, 0.32, 0.01);
}

TEST(PoissonUncertainty, ScalesAsInverseRootTime) {
  const auto s1 = from_rates(600, 14800, 8000, 8000, 128, 95, 0.5, 10000);
  const auto s4 = from_rates(2400, 14800, 8000, 8000, 128, 95, 0.5, 10000);
  const double r1 = poisson_alpha_uncertainty(s1, DetectorMode::ThreeDetector) / alpha_3d(s1);
  const double r4 = poisson_alpha_uncertainty(s4, DetectorMode::ThreeDetector) / alpha_3d(s4);
  EXPECT_NEAR(r1 / r4, 2.0, 1e-6);
  const auto s2 = from_rates(1200, 14800, 8000, 8000, 128, 95, 0.5, 10000);
  EXPECT_NEAR(r1 / (poisson_alpha_uncertainty(s2, DetectorMode::ThreeDetector) / alpha_3d(s2)),
              std::sqrt(2.0), 1e-6);
}

TEST(FoldEnsemble, IdenticalRunsHaveZeroSpread) {
  const auto s = from_rates(30, 14800, 8000, 8000, 128, 95, 0.5, 10000);
  const auto r = fold_ensemble(std::vector<CountSummary>(20, s), DetectorMode::ThreeDetector);
  EXPECT_EQ(r.alpha.alpha_std, 0.0);
  EXPECT_EQ(r.alpha.n_runs, 20u);
  EXPECT_FALSE(r.alpha.violation_sigma.has_value());
  EXPECT_DOUBLE_EQ(r.alpha.alpha_mean, alpha_3d(s));
  EXPECT_EQ(r.totals.n_a, 20 * s.n_a);
}

TEST(FoldEnsemble, ExcludesUndefinedRunsWithWarning) {
  auto good = from_rates(30, 14800, 8000, 8000, 128, 95, 0.5, 10000);
  auto other = good;
  other.n_abbprime += 3;
  auto bad = good;
  bad.n_ab = 0;
  std::vector<std::string> warnings;
  EnsembleOptions opt;
  opt.warn = [&](std::string_view m) { warnings.emplace_back(m); };
  const auto r = fold_ensemble({good, bad, other}, DetectorMode::ThreeDetector, opt);
  EXPECT_EQ(r.alpha.n_runs, 2u);
  EXPECT_EQ(r.alpha.n_excluded, 1u);
  ASSERT_EQ(warnings.size(), 1u);
  EXPECT_NE(warnings[0].find("run 1"), std::string::npos);
  EXPECT_FALSE(r.run_alphas[1].has_value());
  ASSERT_TRUE(r.alpha.violation_sigma.has_value());
  const double a = alpha_3d(good);
  const double b = alpha_3d(other);
  EXPECT_NEAR(r.alpha.alpha_mean, (a + b) / 2, 1e-15);
  EXPECT_NEAR(r.alpha.alpha_std, std::fabs(a - b) / std::sqrt(2.0), 1e-15);
  EXPECT_THROW(fold_ensemble({bad, bad}, DetectorMode::ThreeDetector), UndefinedStatistic);
}

TEST(FoldEnsemble, AccidentalsFromPooledRates) {
  const auto s = from_rates(30, 14800, 16700, 15000, 128, 95, 0.5, 10000);
  const auto r = fold_ensemble({s, s}, DetectorMode::ThreeDetector);
  EXPECT_NEAR(r.alpha.accidentals.rate_2d, 10e-9 * 14800 * 16700, 1e-9);
}

}  // namespace
}  // namespace photocorr
