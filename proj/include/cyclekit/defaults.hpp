#pragma once

#include <cmath>
#include <optional>

namespace cyclekit::defaults {

// Hodrick-Prescott smoothing parameter by sampling step. 1600 is the standard
// quarterly value; 100 is a conventional annual choice. Any other step has no
// default and requires an explicit lambda.
inline constexpr double lambda_quarterly = 1600.0;
inline constexpr double lambda_annual = 100.0;

// Baxter-King truncation half-width (weights span 2K+1 samples).
inline constexpr int truncation = 12;

// Peak detection: prominence threshold as a multiple of the median power.
// Monte-Carlo calibrated (100 Gaussian white-noise seeds, lengths 128-1024,
// raw mean-detrended periodogram): at 15 the detector stays silent on noise
// in >= 99 of 100 seeds; at 5 it fires on most draws.
inline constexpr double min_prominence_ratio = 15.0;

// Kondratieff/Kuznets harmonic ratio test.
inline constexpr int harmonic_order = 3;
inline constexpr double harmonic_tolerance = 0.05;

inline std::optional<double> default_lambda(double step) {
  if (std::abs(step - 0.25) <= 1e-9) return lambda_quarterly;
  if (std::abs(step - 1.0) <= 1e-9) return lambda_annual;
  return std::nullopt;
}

}  // namespace cyclekit::defaults
