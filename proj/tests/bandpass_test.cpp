#include <cyclekit/bandpass.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "oracles.hpp"

namespace ck = cyclekit;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

TEST(CycleBandTest, ContainsIsHalfOpen) {
  ck::CycleBand juglar{"Juglar", 7.0, 11.0};
  EXPECT_TRUE(juglar.contains(7.0));
  EXPECT_TRUE(juglar.contains(10.999));
  EXPECT_FALSE(juglar.contains(11.0));
  EXPECT_FALSE(juglar.contains(6.999));
}

TEST(CycleBandTest, ValidateRejectsDegenerateRanges) {
  EXPECT_THROW(ck::validate(ck::CycleBand{"bad", 0.0, 5.0}), ck::domain_error);
  EXPECT_THROW(ck::validate(ck::CycleBand{"bad", 5.0, 5.0}), ck::domain_error);
  EXPECT_THROW(ck::validate(ck::CycleBand{"bad", 5.0, 3.0}), ck::domain_error);
  EXPECT_NO_THROW(ck::validate(ck::CycleBand{"open", 70.0, kInf}));
}

TEST(CycleBandTest, CanonicalBandsAreTheFiveNamedOnes) {
  const std::vector<ck::CycleBand>& bands = ck::canonical_bands();
  ASSERT_EQ(bands.size(), 5u);
  EXPECT_EQ(bands[0].name, "Kitchin");
  EXPECT_DOUBLE_EQ(bands[0].period_min, 3.0);
  EXPECT_DOUBLE_EQ(bands[0].period_max, 7.0);
  EXPECT_EQ(bands[1].name, "Juglar");
  EXPECT_DOUBLE_EQ(bands[1].period_min, 7.0);
  EXPECT_DOUBLE_EQ(bands[1].period_max, 11.0);
  EXPECT_EQ(bands[2].name, "Kuznets");
  EXPECT_DOUBLE_EQ(bands[2].period_min, 15.0);
  EXPECT_DOUBLE_EQ(bands[2].period_max, 25.0);
  EXPECT_EQ(bands[3].name, "Kondratieff");
  EXPECT_DOUBLE_EQ(bands[3].period_min, 45.0);
  EXPECT_DOUBLE_EQ(bands[3].period_max, 60.0);
  EXPECT_EQ(bands[4].name, "GrandSupercycle");
  EXPECT_DOUBLE_EQ(bands[4].period_min, 70.0);
  EXPECT_TRUE(std::isinf(bands[4].period_max));
  EXPECT_NO_THROW(ck::validate_bands(bands));
}

TEST(CycleBandTest, OverlappingBandsRejected) {
  std::vector<ck::CycleBand> bands{{"a", 3.0, 8.0}, {"b", 7.0, 11.0}};
  EXPECT_THROW(ck::validate_bands(bands), ck::config_error);
  // Touching half-open boundaries do not overlap.
  std::vector<ck::CycleBand> touching{{"a", 3.0, 7.0}, {"b", 7.0, 11.0}};
  EXPECT_NO_THROW(ck::validate_bands(touching));
}

TEST(CycleBandTest, ClassifyPeriodCoversGapsAndBoundaries) {
  EXPECT_EQ(ck::classify_period(5.0), "Kitchin");
  EXPECT_EQ(ck::classify_period(7.0), "Juglar");      // boundary goes to the upper band
  EXPECT_EQ(ck::classify_period(10.0), "Juglar");
  EXPECT_EQ(ck::classify_period(11.0), "Unclassified");  // gap between Juglar and Kuznets
  EXPECT_EQ(ck::classify_period(20.0), "Kuznets");
  EXPECT_EQ(ck::classify_period(30.0), "Unclassified");
  EXPECT_EQ(ck::classify_period(50.0), "Kondratieff");
  EXPECT_EQ(ck::classify_period(65.0), "Unclassified");
  EXPECT_EQ(ck::classify_period(1000.0), "GrandSupercycle");
}

TEST(CycleBandTest, BandByName) {
  EXPECT_DOUBLE_EQ(ck::band_by_name("Kuznets").period_min, 15.0);
  EXPECT_THROW(ck::band_by_name("Schumpeter"), ck::config_error);
}

TEST(BandpassWeightsTest, SymmetricAndZeroSum) {
  ck::FilterWeights w = ck::bandpass_weights(ck::band_by_name("Juglar"), 1.0, 12);
  ASSERT_EQ(w.weights.size(), 25u);
  double sum = 0.0;
  for (int j = 1; j <= 12; ++j) {
    EXPECT_DOUBLE_EQ(w.weight(j), w.weight(-j));
  }
  for (double v : w.weights) sum += v;
  EXPECT_NEAR(sum, 0.0, 1e-12);
  // Zero frequency is therefore fully suppressed.
  EXPECT_NEAR(ck::frequency_response(w, 0.0), 0.0, 1e-12);
}

TEST(BandpassWeightsTest, JuglarGainAtReferenceFrequencies) {
  ck::FilterWeights w = ck::bandpass_weights(ck::band_by_name("Juglar"), 1.0, 12);
  // Mid-band (9-year) passes nearly unchanged; band edges attenuate.
  EXPECT_NEAR(ck::frequency_response(w, 1.0 / 9.0), 0.9712, 1e-3);
  EXPECT_NEAR(ck::frequency_response(w, 0.1), 0.7667, 1e-3);
  EXPECT_NEAR(ck::frequency_response(w, 0.25), 0.0569, 1e-3);
  EXPECT_LT(ck::frequency_response(w, 1.0 / 30.0), 0.1);
}

TEST(BandpassWeightsTest, CentralWeightMatchesPassbandWidth) {
  // Before the zero-sum correction the central weight is (wH - wL)/pi; the
  // correction shifts every weight by the same amount, so compare differences.
  ck::FilterWeights w = ck::bandpass_weights(ck::band_by_name("Juglar"), 1.0, 12);
  const double wl = 2.0 * std::numbers::pi / 11.0;
  const double wh = 2.0 * std::numbers::pi / 7.0;
  double raw0 = (wh - wl) / std::numbers::pi;
  double raw1 = (std::sin(wh) - std::sin(wl)) / std::numbers::pi;
  EXPECT_NEAR(w.weight(0) - w.weight(1), raw0 - raw1, 1e-12);
}

TEST(BandpassWeightsTest, InfinitePeriodMaxActsAsHighPassIdeal) {
  ck::FilterWeights w = ck::bandpass_weights(ck::CycleBand{"open", 70.0, kInf}, 1.0, 40);
  EXPECT_NEAR(ck::frequency_response(w, 0.0), 0.0, 1e-12);
  EXPECT_NO_THROW(ck::validate(w.band));
}

TEST(BandpassWeightsTest, RejectsBadArguments) {
  ck::CycleBand juglar = ck::band_by_name("Juglar");
  EXPECT_THROW(ck::bandpass_weights(juglar, 0.0, 12), ck::spacing_error);
  EXPECT_THROW(ck::bandpass_weights(juglar, 1.0, 0), ck::domain_error);
  // Shortest band period must be resolvable: at least two samples per cycle.
  EXPECT_THROW(ck::bandpass_weights(ck::CycleBand{"fast", 1.5, 4.0}, 1.0, 8), ck::sampling_error);
}

TEST(ApplyBandpassTest, TrimsTruncationSamplesEachSide) {
  ck::TimeSeries y;
  y.start_time = 1900.0;
  y.step = 1.0;
  y.values.assign(60, 0.0);
  for (std::size_t i = 0; i < y.values.size(); ++i)
    y.values[i] = std::sin(2.0 * std::numbers::pi * static_cast<double>(i) / 9.0);
  ck::TimeSeries out = ck::apply_bandpass(y, ck::band_by_name("Juglar"), 12);
  EXPECT_EQ(out.values.size(), 60u - 24u);
  EXPECT_DOUBLE_EQ(out.start_time, 1912.0);
  EXPECT_DOUBLE_EQ(out.step, 1.0);
}

TEST(ApplyBandpassTest, MidBandSinePassesWithFrequencyResponseGain) {
  // 186 annual samples -> 162 filtered samples = 18 whole 9-year periods,
  // so a quadrature projection reads the output amplitude exactly.
  const int k = 12;
  ck::TimeSeries y;
  y.start_time = 0.0;
  y.step = 1.0;
  y.values.resize(186);
  for (std::size_t i = 0; i < y.values.size(); ++i)
    y.values[i] = std::sin(2.0 * std::numbers::pi * static_cast<double>(i) / 9.0);
  ck::TimeSeries out = ck::apply_bandpass(y, ck::band_by_name("Juglar"), k);
  ASSERT_EQ(out.values.size(), 162u);
  double measured = oracles::projected_amplitude(out.values, out.start_time, 1.0, 1.0 / 9.0);
  ck::FilterWeights w = ck::bandpass_weights(ck::band_by_name("Juglar"), 1.0, k);
  EXPECT_NEAR(measured, ck::frequency_response(w, 1.0 / 9.0), 1e-9);
  EXPECT_GT(measured, 0.85);
  EXPECT_LT(measured, 1.1);
}

TEST(ApplyBandpassTest, OutOfBandSineIsSuppressed) {
  ck::TimeSeries y;
  y.start_time = 0.0;
  y.step = 1.0;
  y.values.resize(184);  // 160 output samples = 40 whole 4-year periods
  for (std::size_t i = 0; i < y.values.size(); ++i)
    y.values[i] = std::sin(2.0 * std::numbers::pi * static_cast<double>(i) / 4.0);
  ck::TimeSeries out = ck::apply_bandpass(y, ck::band_by_name("Juglar"), 12);
  double measured = oracles::projected_amplitude(out.values, out.start_time, 1.0, 0.25);
  EXPECT_LE(measured, 0.2);
}

TEST(ApplyBandpassTest, RejectsSeriesShorterThanKernel) {
  ck::TimeSeries y;
  y.start_time = 0.0;
  y.step = 1.0;
  y.values.assign(25, 1.0);  // exactly 2K+1: no output sample remains
  EXPECT_THROW(ck::apply_bandpass(y, ck::band_by_name("Juglar"), 12), ck::size_error);
}

}  // namespace
