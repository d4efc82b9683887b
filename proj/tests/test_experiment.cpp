#include <gtest/gtest.h>

#include <cmath>

#include "photocorr/statistics.hpp"

namespace photocorr {
namespace {

ExperimentConfig short_heralded() {
  ExperimentConfig c;
  c.n_runs = 4;
  c.run_duration = kPicosPerSecond / 2;
  return c;
}

ExperimentConfig coherent_semiclassical(double rate_per_detector, Picoseconds run) {
  ExperimentConfig c;
  c.mode = DetectorMode::TwoDetector;
  c.model = FieldModel::SemiClassical;
  c.source.kind = SourceKind::Coherent;
  c.source.mean_rate = 2.0 * rate_per_detector;
  for (const Channel ch : kAllChannels) {
    c.detectors[ch].efficiency = 1.0;
    c.detectors[ch].dead_time = 0;
  }
  c.run_duration = run;
  return c;
}

TEST(SimulateRun, DeterministicPerRunIndex) {
  const auto c = short_heralded();
  EXPECT_EQ(simulate_run(c, 2), simulate_run(c, 2));
  EXPECT_NE(simulate_run(c, 2).a, simulate_run(c, 3).a);
}

TEST(SimulateRun, HeraldedThreeDetectorRates) {
  auto c = short_heralded();
  c.run_duration = 2 * kPicosPerSecond;
  const auto s = summarize(simulate_run(c, 0), c.window, c.offsets);
  const double T = 2.0;
  // 370 kHz pairs at 4%: herald singles 14.8 kHz, each arm 7.4 kHz, pairs 296 Hz per arm.
  EXPECT_NEAR(s.rate(s.n_a), 14800.0, 5.0 * std::sqrt(14800.0 / T));
  EXPECT_NEAR(s.rate(s.n_b), 7400.0, 5.0 * std::sqrt(7400.0 / T));
  EXPECT_NEAR(s.rate(s.n_bprime), 7400.0, 5.0 * std::sqrt(7400.0 / T));
  EXPECT_NEAR(s.rate(s.n_ab), 296.0, 5.0 * std::sqrt(296.0 / T) + 1.0);
  EXPECT_NO_THROW(s.check_invariants());
}

TEST(SimulateRun, TwoDetectorModeHasNoBprime) {
  auto c = short_heralded();
  c.mode = DetectorMode::TwoDetector;
  const auto r = simulate_run(c, 0);
  EXPECT_TRUE(r.bprime.empty());
  EXPECT_EQ(r.bprime.duration(), c.run_duration);
  EXPECT_GT(r.b.size(), 0u);
}

TEST(SimulateRun, StreamsSatisfyInvariantsInEveryPipeline) {
  std::vector<ExperimentConfig> configs{short_heralded(), coherent_semiclassical(5e4, kPicosPerSecond / 10)};
  ExperimentConfig quantum_coherent = coherent_semiclassical(5e4, kPicosPerSecond / 10);
  quantum_coherent.model = FieldModel::Quantum;
  configs.push_back(quantum_coherent);
  ExperimentConfig thermal = coherent_semiclassical(5e5, kPicosPerMilli);
  thermal.source.kind = SourceKind::Thermal;
  thermal.source.coherence_time = 100000;
  configs.push_back(thermal);
  for (auto& c : configs) {
    c.detectors.a.jitter = 500;
    c.detectors.b.dark_rate = 1000;
    c.detectors.b.dead_time = 20000;
    const auto r = simulate_run(c, 1);
    for (const Channel ch : kAllChannels) {
      const auto& s = r[ch];
      EXPECT_EQ(s.duration(), c.run_duration);
      for (std::size_t i = 0; i < s.size(); ++i) {
        ASSERT_EQ(s[i].channel, ch);
        ASSERT_LT(s[i].time, c.run_duration);
        if (i > 0) {
          ASSERT_LE(s[i - 1].time, s[i].time);
        }
      }
    }
    for (std::size_t i = 1; i < r.b.size(); ++i) {
      ASSERT_GE(r.b[i].time - r.b[i - 1].time, 20000);
    }
  }
}

TEST(SimulateRun, LongRunsSpanChunksWithoutGaps) {
  // Several chunks of the 2^20-event target; count per 100 ms slice stays flat.
  auto c = short_heralded();
  c.run_duration = 3 * kPicosPerSecond;
  c.detectors.a.efficiency = 1.0;
  c.detectors.a.dead_time = 0;
  const auto r = simulate_run(c, 0);
  const Picoseconds slice = kPicosPerSecond / 10;
  std::vector<double> counts(30, 0.0);
  for (const auto& t : r.a) {
    counts[static_cast<std::size_t>(t.time / slice)] += 1.0;
  }
  for (const double n : counts) {
    EXPECT_NEAR(n, 37000.0, 5.0 * std::sqrt(37000.0));
  }
}

TEST(RunEnsemble, IndependentOfWorkerCount) {
  const auto c = short_heralded();
  EnsembleOptions one;
  one.workers = 1;
  EnsembleOptions three;
  three.workers = 3;
  const auto a = run_ensemble(c, one);
  const auto b = run_ensemble(c, three);
  EXPECT_EQ(a.runs, b.runs);
  EXPECT_EQ(a.alpha.alpha_mean, b.alpha.alpha_mean);
  EXPECT_EQ(a.alpha.alpha_std, b.alpha.alpha_std);
}

TEST(RunEnsemble, FailuresPropagate) {
  auto c = short_heralded();
  c.n_runs = 0;
  EXPECT_THROW(run_ensemble(c), ConfigError);
}

TEST(RunEnsemble, IndependentPoissonStreamsGiveUnitAlpha) {
  auto c = coherent_semiclassical(1e5, kPicosPerSecond / 2);
  c.n_runs = 20;
  const auto r = run_ensemble(c);
  EXPECT_NEAR(r.alpha.alpha_mean, 1.0, 3.0 * r.alpha.alpha_std / std::sqrt(20.0));
}

TEST(RunEnsemble, QuantumCoherentSplitterGivesUnitAlpha) {
  auto c = coherent_semiclassical(1e5, kPicosPerSecond / 2);
  c.model = FieldModel::Quantum;
  c.n_runs = 20;
  const auto r = run_ensemble(c);
  EXPECT_NEAR(r.alpha.alpha_mean, 1.0, 3.0 * r.alpha.alpha_std / std::sqrt(20.0));
}

TEST(RunEnsemble, ThermalLightBunches) {
  auto c = coherent_semiclassical(1e6, 10 * kPicosPerMilli);
  c.source.kind = SourceKind::Thermal;
  c.source.coherence_time = 200 * kPicosPerNano;
  c.trace_bin_width = 2000;
  c.n_runs = 10;
  const auto r = run_ensemble(c);
  EXPECT_NEAR(r.alpha.alpha_mean, 2.0, 0.1);
  EXPECT_GE(r.alpha.alpha_mean, 1.0 - 3.0 * r.alpha.alpha_std);
}

TEST(ExperimentConfig, ValidationNamesKeys) {
  auto c = short_heralded();
  c.source.kind = SourceKind::Coherent;
  try {
    c.validate();
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.key(), "mode");
  }
  c = short_heralded();
  c.run_duration = 0;
  EXPECT_THROW(c.validate(), ConfigError);
}

TEST(ExperimentConfig, AutomaticBinWidthRespectsLinearRegime) {
  auto c = coherent_semiclassical(2e6, kPicosPerMilli);
  const auto bin = c.effective_bin_width();
  EXPECT_GT(bin, 0);
  EXPECT_LT(to_seconds(bin) * 2e6, 0.1);
  c.source.kind = SourceKind::Thermal;
  c.source.coherence_time = 50000;
  EXPECT_LE(c.effective_bin_width(), 5000);
}

}  // namespace
}  // namespace photocorr
