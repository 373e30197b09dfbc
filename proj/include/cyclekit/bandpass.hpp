#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "cyclekit/errors.hpp"
#include "cyclekit/time_series.hpp"

namespace cyclekit {

// A business-cycle period band in years. Half-open [period_min, period_max);
// period_max may be +infinity (grand supercycle).
struct CycleBand {
  std::string name;
  double period_min = 0.0;
  double period_max = 0.0;

  bool contains(double period) const { return period >= period_min && period < period_max; }
};

inline void validate(const CycleBand& band) {
  if (!(band.period_min > 0.0) || !(band.period_max > band.period_min))
    throw domain_error("band '" + band.name + "' requires 0 < period_min < period_max");
}

// Kitchin 3-7, Juglar 7-11, Kuznets 15-25, Kondratieff 45-60, grand
// supercycle 70+. Gaps (11-15, 25-45, 60-70) classify as Unclassified.
inline const std::vector<CycleBand>& canonical_bands() {
  static const std::vector<CycleBand> bands = {
      {"Kitchin", 3.0, 7.0},
      {"Juglar", 7.0, 11.0},
      {"Kuznets", 15.0, 25.0},
      {"Kondratieff", 45.0, 60.0},
      {"GrandSupercycle", 70.0, std::numeric_limits<double>::infinity()},
  };
  return bands;
}

inline void validate_bands(const std::vector<CycleBand>& bands) {
  for (const CycleBand& b : bands) validate(b);
  for (std::size_t i = 0; i < bands.size(); ++i) {
    for (std::size_t j = i + 1; j < bands.size(); ++j) {
      double lo = std::max(bands[i].period_min, bands[j].period_min);
      double hi = std::min(bands[i].period_max, bands[j].period_max);
      if (lo < hi)
        throw config_error("bands '" + bands[i].name + "' and '" + bands[j].name + "' overlap");
    }
  }
}

inline std::string classify_period(double period, const std::vector<CycleBand>& bands = canonical_bands()) {
  validate_bands(bands);
  for (const CycleBand& b : bands) {
    if (b.contains(period)) return b.name;
  }
  return "Unclassified";
}

inline const CycleBand& band_by_name(const std::string& name,
                                     const std::vector<CycleBand>& bands = canonical_bands()) {
  for (const CycleBand& b : bands) {
    if (b.name == name) return b;
  }
  throw config_error("unknown band '" + name + "'");
}

// Baxter-King weights: the ideal band-pass filter truncated at |j| <= K, then
// shifted by a uniform constant so the 2K+1 weights sum to zero (unit DC
// rejection). Symmetric by construction.
struct FilterWeights {
  CycleBand band;
  double step = 1.0;
  int truncation = 0;
  std::vector<double> weights;  // index j + K, j in [-K, K]

  double weight(int lag) const { return weights[static_cast<std::size_t>(lag + truncation)]; }
};

inline FilterWeights bandpass_weights(const CycleBand& band, double step, int truncation) {
  validate(band);
  if (!(step > 0.0)) throw spacing_error("step must be > 0");
  if (truncation < 1) throw domain_error("truncation K must be >= 1");
  if (band.period_min < 2.0 * step)
    throw sampling_error("band period_min " + std::to_string(band.period_min) +
                         " is below the Nyquist period " + std::to_string(2.0 * step));

  const int K = truncation;
  const double wh = 2.0 * std::numbers::pi * step / band.period_min;
  const double wl = std::isinf(band.period_max) ? 0.0 : 2.0 * std::numbers::pi * step / band.period_max;

  FilterWeights out;
  out.band = band;
  out.step = step;
  out.truncation = K;
  out.weights.assign(static_cast<std::size_t>(2 * K + 1), 0.0);
  out.weights[static_cast<std::size_t>(K)] = (wh - wl) / std::numbers::pi;
  for (int j = 1; j <= K; ++j) {
    double b = (std::sin(wh * j) - std::sin(wl * j)) / (std::numbers::pi * j);
    out.weights[static_cast<std::size_t>(K + j)] = b;
    out.weights[static_cast<std::size_t>(K - j)] = b;
  }
  double sum = 0.0;
  for (double w : out.weights) sum += w;
  double correction = -sum / static_cast<double>(2 * K + 1);
  for (double& w : out.weights) w += correction;
  return out;
}

// Gain |sum_j w_j e^{-2 pi i f j step}| at frequency f (cycles/year). Real and
// even weights make the response real; the phase shift is exactly zero.
inline double frequency_response(const FilterWeights& w, double frequency) {
  std::complex<double> acc = 0.0;
  for (int j = -w.truncation; j <= w.truncation; ++j) {
    acc += w.weight(j) * std::polar(1.0, -2.0 * std::numbers::pi * frequency * j * w.step);
  }
  return std::abs(acc);
}

inline TimeSeries apply_bandpass(const TimeSeries& series, const CycleBand& band, int truncation) {
  validate(series);
  FilterWeights w = bandpass_weights(band, series.step, truncation);
  const int K = truncation;
  const std::size_t n = series.values.size();
  if (n <= static_cast<std::size_t>(2 * K + 1))
    throw size_error("series length " + std::to_string(n) + " must exceed 2K+1 = " +
                     std::to_string(2 * K + 1));

  TimeSeries out;
  out.step = series.step;
  out.start_time = series.start_time + K * series.step;
  out.label = series.label.empty() ? band.name : series.label + " " + band.name;
  out.units = series.units;
  out.values.resize(n - static_cast<std::size_t>(2 * K));
  for (std::ptrdiff_t t = K; t + K < static_cast<std::ptrdiff_t>(n); ++t) {
    double acc = 0.0;
    for (int j = -K; j <= K; ++j) {
      acc += w.weight(j) * series.values[static_cast<std::size_t>(t + j)];
    }
    out.values[static_cast<std::size_t>(t - K)] = acc;
  }
  return out;
}

}  // namespace cyclekit
