#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "photocorr/detection.hpp"
#include "photocorr/sources.hpp"

namespace photocorr {
namespace {

DetectorConfig ideal() {
  DetectorConfig c;
  c.efficiency = 1.0;
  c.dark_rate = 0.0;
  c.dead_time = 0;
  c.jitter = 0;
  return c;
}

TEST(DetectPhotons, IdealDetectorIsIdentity) {
  const auto s = gen_coherent_tags(1e5, kPicosPerSecond / 10, RandomSeed{1}, Channel::B);
  EXPECT_EQ(detect_photons(s, ideal(), RandomSeed{2}, Channel::B), s);
}

TEST(DetectPhotons, BlindDetectorIsEmpty) {
  auto c = ideal();
  c.efficiency = 0.0;
  const auto s = gen_coherent_tags(1e5, kPicosPerSecond / 10, RandomSeed{1});
  const auto out = detect_photons(s, c, RandomSeed{2}, Channel::A);
  EXPECT_TRUE(out.empty());
  EXPECT_EQ(out.duration(), s.duration());
}

TEST(DetectPhotons, FourPercentEfficiency) {
  const auto s = gen_coherent_tags(1e7, kPicosPerSecond, RandomSeed{3});
  auto c = ideal();
  c.efficiency = 0.04;
  const auto out = detect_photons(s, c, RandomSeed{4}, Channel::A);
  const double n = static_cast<double>(s.size());
  EXPECT_NEAR(static_cast<double>(out.size()), 0.04 * n, 5.0 * std::sqrt(n * 0.04 * 0.96));
}

TEST(DetectPhotons, JitterAndDarkCountsStayInRange) {
  auto c = ideal();
  c.jitter = 2000;
  c.dark_rate = 5000.0;
  c.dead_time = 50000;
  const Picoseconds T = kPicosPerSecond / 5;
  const auto s = gen_coherent_tags(2e4, T, RandomSeed{5});
  const auto out = detect_photons(s, c, RandomSeed{6}, Channel::Bprime);
  EXPECT_EQ(out.duration(), T);
  for (std::size_t i = 0; i < out.size(); ++i) {
    ASSERT_GE(out[i].time, 0);
    ASSERT_LT(out[i].time, T);
    ASSERT_EQ(out[i].channel, Channel::Bprime);
    if (i > 0) {
      ASSERT_GE(out[i].time - out[i - 1].time, c.dead_time);
    }
  }
  // 2e4 + 5e3 Hz over 0.2 s, minus a ~0.1% dead-time loss.
  EXPECT_NEAR(static_cast<double>(out.size()), 5000.0, 5.0 * std::sqrt(5000.0) + 10.0);
}

TEST(DetectPhotons, EfficiencyMonotone) {
  const auto s = gen_coherent_tags(1e5, kPicosPerSecond, RandomSeed{7});
  std::size_t previous = 0;
  for (const double eta : {0.0, 0.1, 0.3, 0.6, 0.9, 1.0}) {
    auto c = ideal();
    c.efficiency = eta;
    double mean = 0.0;
    for (std::uint64_t k = 0; k < 5; ++k) {
      mean += static_cast<double>(detect_photons(s, c, RandomSeed{k}, Channel::A).size());
    }
    EXPECT_GE(mean / 5.0, static_cast<double>(previous));
    previous = static_cast<std::size_t>(mean / 5.0);
  }
}

TEST(DetectorConfig, Validation) {
  auto c = ideal();
  c.efficiency = 1.5;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = ideal();
  c.pulse_width = 0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = ideal();
  c.dark_rate = -1.0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
}

TEST(DetectIntensity, DarkTraceGivesNothing) {
  const IntensityTrace zero(1000, std::vector<double>(1000, 0.0));
  EXPECT_TRUE(detect_intensity(zero, ideal(), RandomSeed{1}, Channel::A).empty());
}

TEST(DetectIntensity, ConstantTraceThirtySeconds) {
  const Picoseconds T = 30 * kPicosPerSecond;
  const auto trace = constant_trace(16700.0, kPicosPerMicro, T);
  const auto out = detect_intensity(trace, ideal(), RandomSeed{2}, Channel::B);
  EXPECT_NEAR(static_cast<double>(out.size()), 501000.0, 5.0 * std::sqrt(501000.0));
}

TEST(DetectIntensity, LinearRegimeEnforced) {
  // 1e6 Hz * 1 us = 1 count per bin.
  const auto trace = constant_trace(1e6, kPicosPerMicro, kPicosPerMilli);
  try {
    detect_intensity(trace, ideal(), RandomSeed{1}, Channel::A);
    FAIL() << "expected invalid_argument";
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("bin 0"), std::string::npos) << e.what();
  }
  auto c = ideal();
  c.efficiency = 0.05;
  EXPECT_NO_THROW(detect_intensity(trace, c, RandomSeed{1}, Channel::A));
}

TEST(DetectIntensity, ConstantTraceMatchesCoherentStream) {
  const double rate = 2e5;
  const Picoseconds T = kPicosPerSecond / 2;
  const auto semi = detect_intensity(constant_trace(rate, 100000, T), ideal(), RandomSeed{3},
                                     Channel::A);
  const auto tags = gen_coherent_tags(rate, T, RandomSeed{4});
  auto gaps = [](const TimeTagStream& s) {
    std::vector<double> g;
    for (std::size_t i = 1; i < s.size(); ++i) {
      g.push_back(to_seconds(s[i].time - s[i - 1].time));
    }
    return g;
  };
  const auto gs = gaps(semi);
  EXPECT_GT(testing::ks_two_sample_pvalue(gs, gaps(tags)), 0.01);
  EXPECT_GT(testing::ks_exponential_pvalue(gs, rate), 0.01);
}

TEST(DetectIntensity, ThermalLightIsSuperPoissonian) {
  const Picoseconds tc = 100 * kPicosPerNano;
  const auto trace = gen_thermal_trace(6e6, tc, 1000, 4 * kPicosPerMilli, RandomSeed{5});
  const auto out = detect_intensity(trace, ideal(), RandomSeed{6}, Channel::A);
  // Counting windows aligned inside single coherence intervals.
  const Picoseconds w = tc / 2;
  std::vector<double> counts(static_cast<std::size_t>(trace.duration() / w), 0.0);
  for (const auto& t : out) {
    counts[static_cast<std::size_t>(t.time / w)] += 1.0;
  }
  double m = 0.0;
  for (const double x : counts) m += x;
  m /= static_cast<double>(counts.size());
  double var = 0.0;
  for (const double x : counts) var += (x - m) * (x - m);
  var /= static_cast<double>(counts.size() - 1);
  EXPECT_GT(var / m, 1.0);
  // Doubly stochastic Poisson: var/mean = 1 + mean * (<I^2>/<I>^2 - 1), with
  // the moment taken from the realised trace.
  const double excess = m * (trace.normalized_second_moment() - 1.0);
  EXPECT_NEAR(var / m, 1.0 + excess, 0.2 * excess);
}

TEST(ApplyDeadTime, Examples) {
  const auto s = TimeTagStream::from_times({0, 5, 11}, Channel::A, 100);
  EXPECT_EQ(apply_dead_time(s, 0), s);
  EXPECT_EQ(apply_dead_time(s, 10).times(), (std::vector<Picoseconds>{0, 11}));
}

TEST(ApplyDeadTime, NonParalyzableRate) {
  const double rate = 2e6;
  const Picoseconds dead = 100 * kPicosPerNano;  // R tau = 0.2
  const auto s = gen_coherent_tags(rate, kPicosPerSecond / 2, RandomSeed{8});
  const auto out = apply_dead_time(s, dead);
  const double expected = rate / (1.0 + rate * to_seconds(dead)) * 0.5;
  EXPECT_NEAR(static_cast<double>(out.size()), expected, 5.0 * std::sqrt(expected));
}

}  // namespace
}  // namespace photocorr
