#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>
#include <vector>

#include "cyclekit/bandpass.hpp"
#include "cyclekit/detail/fft.hpp"
#include "cyclekit/errors.hpp"
#include "cyclekit/hp_filter.hpp"
#include "cyclekit/time_series.hpp"

namespace cyclekit {

enum class DetrendMode { none, mean, linear, hp };

// Detrend specification; hp carries its smoothing parameter.
struct Detrend {
  DetrendMode mode = DetrendMode::mean;
  double hp_lambda = 0.0;

  static Detrend none() { return {DetrendMode::none, 0.0}; }
  static Detrend mean() { return {DetrendMode::mean, 0.0}; }
  static Detrend linear() { return {DetrendMode::linear, 0.0}; }
  static Detrend hp(double lambda) { return {DetrendMode::hp, lambda}; }

  std::string describe() const {
    switch (mode) {
      case DetrendMode::none: return "none";
      case DetrendMode::mean: return "mean";
      case DetrendMode::linear: return "linear";
      case DetrendMode::hp: return "hp(" + std::to_string(hp_lambda) + ")";
    }
    return "none";
  }
};

enum class TaperMode { none, hann };

inline const char* to_string(TaperMode t) { return t == TaperMode::none ? "none" : "hann"; }

// Estimator descriptor recorded with every spectrum.
struct SpectrumMethod {
  std::string detrend = "mean";
  std::string taper = "none";
  int segments = 1;
  int pad_factor = 1;

  std::string describe() const {
    return "detrend=" + detrend + " taper=" + taper + " segments=" + std::to_string(segments) +
           " pad=" + std::to_string(pad_factor);
  }
};

// One-sided power spectral density on the grid k/(N*step), k = 0..floor(N/2).
// Normalized so that sum(power)*delta_f equals the mean square of the
// (detrended, untapered) input; the Hann taper applies the standard
// power-correction factor sum(w^2)/N.
struct Spectrum {
  std::vector<double> frequencies;
  std::vector<double> power;
  double step = 1.0;
  SpectrumMethod method;

  std::size_t size() const { return power.size(); }
  double bin_width() const { return frequencies.size() > 1 ? frequencies[1] - frequencies[0] : 0.0; }
};

inline TimeSeries detrend_series(const TimeSeries& series, const Detrend& detrend) {
  validate(series);
  TimeSeries out = series;
  switch (detrend.mode) {
    case DetrendMode::none:
      break;
    case DetrendMode::mean: {
      double m = 0.0;
      for (double v : out.values) m += v;
      m /= static_cast<double>(out.values.size());
      for (double& v : out.values) v -= m;
      break;
    }
    case DetrendMode::linear: {
      // Least-squares line over sample index.
      const double n = static_cast<double>(out.values.size());
      double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
      for (std::size_t i = 0; i < out.values.size(); ++i) {
        double x = static_cast<double>(i);
        sx += x;
        sy += out.values[i];
        sxx += x * x;
        sxy += x * out.values[i];
      }
      double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
      double intercept = (sy - slope * sx) / n;
      for (std::size_t i = 0; i < out.values.size(); ++i)
        out.values[i] -= intercept + slope * static_cast<double>(i);
      break;
    }
    case DetrendMode::hp: {
      out.values = hp_filter(series, detrend.hp_lambda).cycle.values;
      break;
    }
  }
  return out;
}

namespace detail {

// Periodogram of one already-detrended segment, zero-padded by pad_factor.
inline std::vector<double> segment_power(const std::vector<double>& x, double step, TaperMode taper,
                                         int pad_factor) {
  const std::size_t m = x.size();
  std::vector<double> windowed(x);
  double power_norm = static_cast<double>(m);  // sum of squared window
  if (taper == TaperMode::hann) {
    power_norm = 0.0;
    for (std::size_t n = 0; n < m; ++n) {
      double w = 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * static_cast<double>(n) /
                                       static_cast<double>(m)));
      windowed[n] *= w;
      power_norm += w * w;
    }
  }
  const std::size_t padded = m * static_cast<std::size_t>(pad_factor);
  windowed.resize(padded, 0.0);
  std::vector<std::complex<double>> X = dft(windowed);
  const std::size_t bins = padded / 2 + 1;
  std::vector<double> power(bins);
  const double scale = step / power_norm;
  for (std::size_t k = 0; k < bins; ++k) {
    bool interior = k != 0 && !(padded % 2 == 0 && k == padded / 2);
    power[k] = scale * (interior ? 2.0 : 1.0) * std::norm(X[k]);
  }
  return power;
}

}  // namespace detail

inline Spectrum periodogram(const TimeSeries& series, const Detrend& detrend = Detrend::mean(),
                            TaperMode taper = TaperMode::none, int segments = 1, int pad_factor = 1) {
  validate(series);
  if (series.values.size() < 8) throw size_error("periodogram requires length >= 8");
  if (segments < 1) throw domain_error("segment count must be >= 1");
  if (pad_factor < 1) throw domain_error("pad factor must be >= 1");
  const std::size_t seg_len = series.values.size() / static_cast<std::size_t>(segments);
  if (seg_len < 8) throw size_error("segments shorter than 8 samples");

  Spectrum out;
  out.step = series.step;
  out.method = {detrend.describe(), to_string(taper), segments, pad_factor};

  const std::size_t padded = seg_len * static_cast<std::size_t>(pad_factor);
  out.power.assign(padded / 2 + 1, 0.0);
  for (int s = 0; s < segments; ++s) {
    TimeSeries seg;
    seg.start_time = series.time_at(static_cast<std::size_t>(s) * seg_len);
    seg.step = series.step;
    auto first = series.values.begin() + static_cast<std::ptrdiff_t>(static_cast<std::size_t>(s) * seg_len);
    seg.values.assign(first, first + static_cast<std::ptrdiff_t>(seg_len));
    std::vector<double> x = detrend_series(seg, detrend).values;
    std::vector<double> p = detail::segment_power(x, series.step, taper, pad_factor);
    for (std::size_t k = 0; k < p.size(); ++k) out.power[k] += p[k];
  }
  if (segments > 1) {
    for (double& p : out.power) p /= static_cast<double>(segments);
  }
  out.frequencies.resize(out.power.size());
  for (std::size_t k = 0; k < out.frequencies.size(); ++k) {
    out.frequencies[k] =
        static_cast<double>(k) / (static_cast<double>(padded) * series.step);
  }
  return out;
}

// A detected spectral line. period = 1/frequency; prominence is the peak
// power minus the higher of the two flanking valley minima.
struct SpectralPeak {
  double frequency = 0.0;
  double period = 0.0;
  double power = 0.0;
  double prominence = 0.0;
};

inline double median_power(const Spectrum& spectrum) {
  std::vector<double> p = spectrum.power;
  std::sort(p.begin(), p.end());
  const std::size_t n = p.size();
  return n % 2 == 1 ? p[n / 2] : 0.5 * (p[n / 2 - 1] + p[n / 2]);
}

inline std::vector<SpectralPeak> find_peaks(const Spectrum& spectrum, double min_prominence_ratio) {
  if (spectrum.power.empty()) throw size_error("find_peaks: empty spectrum");
  if (min_prominence_ratio < 0.0) throw domain_error("min_prominence_ratio must be >= 0");
  const std::vector<double>& p = spectrum.power;
  const std::size_t n = p.size();

  // Strict local maxima; bin 0 (the trend/DC bin) never qualifies.
  std::vector<std::size_t> maxima;
  for (std::size_t k = 1; k + 1 < n; ++k) {
    if (p[k] > p[k - 1] && p[k] > p[k + 1]) maxima.push_back(k);
  }

  const double threshold = min_prominence_ratio * median_power(spectrum);
  std::vector<SpectralPeak> peaks;
  for (std::size_t m = 0; m < maxima.size(); ++m) {
    std::size_t k = maxima[m];
    std::size_t left_edge = m == 0 ? 0 : maxima[m - 1];
    std::size_t right_edge = m + 1 < maxima.size() ? maxima[m + 1] : n - 1;
    double left_valley = *std::min_element(p.begin() + static_cast<std::ptrdiff_t>(left_edge),
                                           p.begin() + static_cast<std::ptrdiff_t>(k) + 1);
    double right_valley = *std::min_element(p.begin() + static_cast<std::ptrdiff_t>(k),
                                            p.begin() + static_cast<std::ptrdiff_t>(right_edge) + 1);
    double prominence = p[k] - std::max(left_valley, right_valley);
    if (prominence >= threshold) {
      SpectralPeak peak;
      peak.frequency = spectrum.frequencies[k];
      peak.period = 1.0 / peak.frequency;
      peak.power = p[k];
      peak.prominence = prominence;
      peaks.push_back(peak);
    }
  }
  std::sort(peaks.begin(), peaks.end(), [](const SpectralPeak& a, const SpectralPeak& b) {
    if (a.power != b.power) return a.power > b.power;
    return a.frequency < b.frequency;
  });
  return peaks;
}

struct PeakClassification {
  SpectralPeak peak;
  std::string band;
};

inline std::vector<PeakClassification> classify_peaks(const std::vector<SpectralPeak>& peaks,
                                                      const std::vector<CycleBand>& bands = canonical_bands()) {
  validate_bands(bands);
  std::vector<PeakClassification> out;
  out.reserve(peaks.size());
  for (const SpectralPeak& p : peaks) out.push_back({p, classify_period(p.period, bands)});
  return out;
}

struct HarmonicRatioResult {
  double ratio = 0.0;
  bool pass = false;
};

// Tests whether f_high is the n-th harmonic of f_low within a relative
// tolerance: pass iff |f_high/f_low - n| <= tol * n.
inline HarmonicRatioResult harmonic_ratio_test(double f_low, double f_high, int n, double tol) {
  if (!(f_low > 0.0) || !(f_high > 0.0)) throw domain_error("frequencies must be > 0");
  if (f_high < f_low) throw domain_error("f_high must be >= f_low");
  if (n < 1) throw domain_error("harmonic order n must be >= 1");
  if (tol < 0.0) throw domain_error("tolerance must be >= 0");
  HarmonicRatioResult out;
  out.ratio = f_high / f_low;
  out.pass = std::abs(out.ratio - static_cast<double>(n)) <= tol * static_cast<double>(n);
  return out;
}

}  // namespace cyclekit
