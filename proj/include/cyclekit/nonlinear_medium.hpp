#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <string>
#include <vector>

#include "cyclekit/detail/fft.hpp"
#include "cyclekit/errors.hpp"
#include "cyclekit/spectrum.hpp"
#include "cyclekit/time_series.hpp"

namespace cyclekit {

// A business-cycle component modeled as a continuous-wave oscillation.
struct Tone {
  double amplitude = 0.0;  // activity units
  double frequency = 0.0;  // cycles/year
  double phase = 0.0;      // radians in [0, 2*pi)
};

// Normalizes the phase into [0, 2*pi).
inline Tone make_tone(double amplitude, double frequency, double phase = 0.0) {
  double two_pi = 2.0 * std::numbers::pi;
  double p = std::fmod(phase, two_pi);
  if (p < 0.0) p += two_pi;
  return {amplitude, frequency, p};
}

inline void validate(const Tone& t) {
  if (!(t.amplitude >= 0.0)) throw domain_error("tone amplitude must be >= 0");
  if (!(t.frequency > 0.0)) throw domain_error("tone frequency must be > 0");
  if (!(t.phase >= 0.0) || !(t.phase < 2.0 * std::numbers::pi))
    throw domain_error("tone phase must lie in [0, 2*pi)");
}

struct ToneSet {
  std::vector<Tone> tones;

  std::size_t size() const { return tones.size(); }
  double max_frequency() const {
    double m = 0.0;
    for (const Tone& t : tones) m = std::max(m, t.frequency);
    return m;
  }
};

inline void validate(const ToneSet& set) {
  for (const Tone& t : set.tones) validate(t);
  for (std::size_t i = 0; i < set.tones.size(); ++i) {
    for (std::size_t j = i + 1; j < set.tones.size(); ++j) {
      double fi = set.tones[i].frequency, fj = set.tones[j].frequency;
      if (std::abs(fi - fj) <= 1e-12 * std::max(fi, fj))
        throw domain_error("tone frequencies must be pairwise distinct");
    }
  }
}

// The economic medium: a memoryless cubic response a1*x + a2*x^2 + a3*x^3
// plus the phase-modulation / power-transfer / reflection coefficients.
struct NonlinearMedium {
  double a1 = 1.0;  // linear gain
  double a2 = 0.0;  // 1/activity-unit
  double a3 = 0.0;  // 1/activity-unit^2
  double kerr_kappa = 0.0;        // radians per unit power
  double raman_gain = 0.0;        // 1/(power*year)
  double sbs_reflectivity = 0.0;  // in [0, 1]
  double sbs_doppler_shift = 0.0; // cycles/year
};

inline void validate(const NonlinearMedium& m) {
  for (double v : {m.a1, m.a2, m.a3, m.kerr_kappa, m.raman_gain, m.sbs_reflectivity, m.sbs_doppler_shift}) {
    if (!std::isfinite(v)) throw domain_error("medium coefficients must be finite");
  }
  if (m.sbs_reflectivity < 0.0 || m.sbs_reflectivity > 1.0)
    throw domain_error("sbs_reflectivity must lie in [0, 1]");
  if (m.sbs_doppler_shift < 0.0) throw domain_error("sbs_doppler_shift must be >= 0");
}

enum class ProductKind {
  DC,
  Fundamental,
  Harmonic2,
  Harmonic3,
  IMD_diff,
  IMD_sum,
  FWM_low,
  FWM_high,
  FWM_sum,
  TripleBeat,
};

inline const char* to_string(ProductKind k) {
  switch (k) {
    case ProductKind::DC: return "DC";
    case ProductKind::Fundamental: return "Fundamental";
    case ProductKind::Harmonic2: return "Harmonic2";
    case ProductKind::Harmonic3: return "Harmonic3";
    case ProductKind::IMD_diff: return "IMD_diff";
    case ProductKind::IMD_sum: return "IMD_sum";
    case ProductKind::FWM_low: return "FWM_low";
    case ProductKind::FWM_high: return "FWM_high";
    case ProductKind::FWM_sum: return "FWM_sum";
    case ProductKind::TripleBeat: return "TripleBeat";
  }
  return "?";
}

// One predicted spectral line of the polynomial response. Amplitudes are
// magnitudes (phase flips from negative coefficients are folded in), and
// negative combination frequencies are folded to |f|. Colliding frequencies
// stay as separate entries; nothing is merged.
struct MixingProduct {
  ProductKind kind = ProductKind::Fundamental;
  double frequency = 0.0;
  double amplitude = 0.0;
  std::vector<std::size_t> parents;
};

inline TimeSeries synthesize(const ToneSet& tones, double t0, double t1, double dt) {
  validate(tones);
  if (!(dt > 0.0)) throw spacing_error("dt must be > 0");
  if (!(t1 > t0)) throw range_error("t1 must exceed t0");
  double fmax = tones.max_frequency();
  if (fmax > 0.0 && dt > 1.0 / (2.0 * fmax) * (1.0 + 1e-12))
    throw sampling_error("dt " + std::to_string(dt) + " violates the Nyquist limit 1/(2*" +
                         std::to_string(fmax) + ")");
  const auto n = static_cast<std::size_t>((t1 - t0) / dt + 1e-9);
  if (n < 2) throw size_error("window [t0, t1) holds fewer than 2 samples");

  TimeSeries out;
  out.start_time = t0;
  out.step = dt;
  out.values.assign(n, 0.0);
  for (const Tone& tone : tones.tones) {
    for (std::size_t k = 0; k < n; ++k) {
      double t = t0 + static_cast<double>(k) * dt;
      out.values[k] += tone.amplitude *
                       std::cos(2.0 * std::numbers::pi * tone.frequency * t + tone.phase);
    }
  }
  return out;
}

inline TimeSeries apply_polynomial(const TimeSeries& series, const NonlinearMedium& medium) {
  validate(series);
  validate(medium);
  TimeSeries out = series;
  for (double& v : out.values) {
    double x = v;
    v = medium.a1 * x + medium.a2 * x * x + medium.a3 * x * x * x;
  }
  return out;
}

// Exact trigonometric expansion of a1*x + a2*x^2 + a3*x^3 over a tone sum:
//   cos^2 t = 1/2 + cos(2t)/2
//   cos^3 t = (3/4) cos t + (1/4) cos 3t
//   2 cos a cos b = cos(a-b) + cos(a+b)
//   4 cos a cos b cos c = cos(a+b+c) + cos(a+b-c) + cos(a-b+c) + cos(a-b-c)
// max_order 2 expands a1, a2 terms only; 3 adds the cubic family.
inline std::vector<MixingProduct> predict_products(const ToneSet& tones, const NonlinearMedium& medium,
                                                   int max_order = 3) {
  validate(tones);
  validate(medium);
  if (tones.tones.empty()) throw size_error("predict_products requires at least one tone");
  if (max_order != 2 && max_order != 3) throw domain_error("max_order must be 2 or 3");
  const bool cubic = max_order == 3;
  const std::vector<Tone>& ts = tones.tones;
  const std::size_t m = ts.size();

  std::vector<MixingProduct> out;
  auto push = [&out](ProductKind kind, double freq, double amp, std::vector<std::size_t> parents) {
    if (amp == 0.0) return;
    out.push_back({kind, std::abs(freq), std::abs(amp), std::move(parents)});
  };

  // DC rectification from the quadratic term: a2 * sum A_i^2 / 2.
  double dc = 0.0;
  for (const Tone& t : ts) dc += t.amplitude * t.amplitude;
  std::vector<std::size_t> all(m);
  for (std::size_t i = 0; i < m; ++i) all[i] = i;
  push(ProductKind::DC, 0.0, medium.a2 * dc / 2.0, all);

  for (std::size_t i = 0; i < m; ++i) {
    const double A = ts[i].amplitude, f = ts[i].frequency;
    double fundamental = medium.a1 * A;
    if (cubic) {
      double cross = 0.0;
      for (std::size_t j = 0; j < m; ++j) {
        if (j != i) cross += ts[j].amplitude * ts[j].amplitude;
      }
      fundamental += medium.a3 * (0.75 * A * A * A + 1.5 * A * cross);
    }
    push(ProductKind::Fundamental, f, fundamental, {i});
    push(ProductKind::Harmonic2, 2.0 * f, medium.a2 * A * A / 2.0, {i});
    if (cubic) push(ProductKind::Harmonic3, 3.0 * f, medium.a3 * A * A * A / 4.0, {i});
  }

  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      // Order the pair by frequency: lo/hi as in the 2*f_lo - f_hi convention.
      std::size_t lo = ts[i].frequency < ts[j].frequency ? i : j;
      std::size_t hi = lo == i ? j : i;
      const double Al = ts[lo].amplitude, fl = ts[lo].frequency;
      const double Ah = ts[hi].amplitude, fh = ts[hi].frequency;
      push(ProductKind::IMD_diff, fh - fl, medium.a2 * Al * Ah, {lo, hi});
      push(ProductKind::IMD_sum, fh + fl, medium.a2 * Al * Ah, {lo, hi});
      if (cubic) {
        push(ProductKind::FWM_low, 2.0 * fl - fh, 0.75 * medium.a3 * Al * Al * Ah, {lo, hi});
        push(ProductKind::FWM_high, 2.0 * fh - fl, 0.75 * medium.a3 * Ah * Ah * Al, {lo, hi});
        push(ProductKind::FWM_sum, 2.0 * fl + fh, 0.75 * medium.a3 * Al * Al * Ah, {lo, hi});
        push(ProductKind::FWM_sum, 2.0 * fh + fl, 0.75 * medium.a3 * Ah * Ah * Al, {lo, hi});
      }
    }
  }

  if (cubic) {
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = i + 1; j < m; ++j) {
        for (std::size_t k = j + 1; k < m; ++k) {
          double amp = 1.5 * medium.a3 * ts[i].amplitude * ts[j].amplitude * ts[k].amplitude;
          double fi = ts[i].frequency, fj = ts[j].frequency, fk = ts[k].frequency;
          push(ProductKind::TripleBeat, fi + fj + fk, amp, {i, j, k});
          push(ProductKind::TripleBeat, fi + fj - fk, amp, {i, j, k});
          push(ProductKind::TripleBeat, fi - fj + fk, amp, {i, j, k});
          push(ProductKind::TripleBeat, fi - fj - fk, amp, {i, j, k});
        }
      }
    }
  }

  std::sort(out.begin(), out.end(), [](const MixingProduct& a, const MixingProduct& b) {
    if (a.frequency != b.frequency) return a.frequency < b.frequency;
    if (a.kind != b.kind) return static_cast<int>(a.kind) < static_cast<int>(b.kind);
    return a.parents < b.parents;
  });
  return out;
}

enum class KerrMode { spm, xpm };

inline const char* to_string(KerrMode m) { return m == KerrMode::spm ? "SPM" : "XPM"; }

// Carrier-induced phase modulation. Each tone is carried as a complex
// envelope A_i e^{i theta_i(t)} and multiplied by exp(i*kappa*P(t)), where P
// is the tone's own instantaneous power (A_i cos theta_i)^2 for SPM or the
// sum of the other tones' powers for XPM. The result is the power spectrum
// of the summed complex field with negative-frequency bins folded into |f|;
// pure phase modulation preserves the field magnitudes, so total power is
// conserved. Normalization matches periodogram():  sum(power)*delta_f equals
// the total mean real-signal power sum A_i^2/2 (plus windowing cross terms).
inline Spectrum kerr_phase_modulation(const ToneSet& tones, double kappa, KerrMode mode, double t0,
                                      double t1, double dt) {
  validate(tones);
  if (kappa < 0.0) throw domain_error("kappa must be >= 0");
  if (!(dt > 0.0)) throw spacing_error("dt must be > 0");
  if (!(t1 > t0)) throw range_error("t1 must exceed t0");
  double fmax = tones.max_frequency();
  // Factor-4 guard band above the highest carrier leaves room for sidebands.
  if (fmax > 0.0 && 1.0 / (2.0 * dt) < 4.0 * fmax * (1.0 - 1e-12))
    throw sampling_error("dt " + std::to_string(dt) + " leaves no guard band: need 1/(2dt) >= 4*" +
                         std::to_string(fmax));
  const auto n = static_cast<std::size_t>((t1 - t0) / dt + 1e-9);
  if (n < 8) throw size_error("window [t0, t1) holds fewer than 8 samples");

  const std::size_t m = tones.tones.size();
  std::vector<std::complex<double>> field(n, 0.0);
  std::vector<double> theta(m), power(m);
  for (std::size_t k = 0; k < n; ++k) {
    double t = t0 + static_cast<double>(k) * dt;
    for (std::size_t i = 0; i < m; ++i) {
      theta[i] = 2.0 * std::numbers::pi * tones.tones[i].frequency * t + tones.tones[i].phase;
      double re = tones.tones[i].amplitude * std::cos(theta[i]);
      power[i] = re * re;
    }
    double total_power = 0.0;
    for (double p : power) total_power += p;
    for (std::size_t i = 0; i < m; ++i) {
      double phi = mode == KerrMode::spm ? kappa * power[i] : kappa * (total_power - power[i]);
      field[k] += std::polar(tones.tones[i].amplitude, theta[i] + phi);
    }
  }

  std::vector<std::complex<double>> X = detail::dft(field);
  Spectrum out;
  out.step = dt;
  out.method = {"none", "none", 1, 1};
  const std::size_t bins = n / 2 + 1;
  out.power.assign(bins, 0.0);
  out.frequencies.resize(bins);
  const double scale = dt / (2.0 * static_cast<double>(n));
  for (std::size_t k = 0; k < bins; ++k) {
    double p = std::norm(X[k]);
    std::size_t mirror = (n - k) % n;  // negative-frequency twin of bin k
    if (mirror != k) p += std::norm(X[mirror]);
    out.power[k] = scale * p;
    out.frequencies[k] = static_cast<double>(k) / (static_cast<double>(n) * dt);
  }
  return out;
}

// Two-mode stimulated power transfer from the higher-frequency cycle to the
// lower-frequency one: dP_h/dt = -g P_h P_l, dP_l/dt = +g P_h P_l. The
// vector field is antisymmetric, so classical RK4 reduces to integrating the
// scalar transfer flux, applied as -delta/+delta; the sum P_h + P_l is then
// conserved to rounding regardless of step size.
struct RamanTrajectory {
  std::vector<double> times;
  std::vector<double> p_high;
  std::vector<double> p_low;
  // Largest per-step change of either component relative to the conserved
  // total; a step-size diagnostic for spotting too-coarse dt.
  double max_relative_step_change = 0.0;
};

inline RamanTrajectory raman_transfer(double p_high, double p_low, double gain, double duration,
                                      double dt) {
  if (!(p_high >= 0.0) || !(p_low >= 0.0)) throw domain_error("powers must be >= 0");
  if (!(gain >= 0.0)) throw domain_error("gain must be >= 0");
  if (!(dt > 0.0)) throw spacing_error("dt must be > 0");
  if (!(duration > 0.0)) throw range_error("duration must be > 0");
  const auto steps = static_cast<std::size_t>(std::llround(duration / dt));
  if (steps < 1) throw range_error("duration shorter than one step");

  RamanTrajectory out;
  out.times.reserve(steps + 1);
  out.p_high.reserve(steps + 1);
  out.p_low.reserve(steps + 1);
  double h = p_high, l = p_low;
  const double total = h + l;
  out.times.push_back(0.0);
  out.p_high.push_back(h);
  out.p_low.push_back(l);
  auto flow = [gain](double ph, double pl) { return gain * ph * pl; };
  for (std::size_t s = 1; s <= steps; ++s) {
    double k1 = flow(h, l);
    double k2 = flow(h - 0.5 * dt * k1, l + 0.5 * dt * k1);
    double k3 = flow(h - 0.5 * dt * k2, l + 0.5 * dt * k2);
    double k4 = flow(h - dt * k3, l + dt * k3);
    double delta = dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    h -= delta;
    l += delta;
    out.times.push_back(static_cast<double>(s) * dt);
    out.p_high.push_back(h);
    out.p_low.push_back(l);
    if (total > 0.0)
      out.max_relative_step_change = std::max(out.max_relative_step_change, std::abs(delta) / total);
  }
  return out;
}

// Backward reflection from the medium's moving grating: amplitude scaled by
// the reflectivity, frequency Doppler-shifted down, phase preserved.
inline Tone brillouin_reflect(const Tone& tone, const NonlinearMedium& medium) {
  validate(tone);
  validate(medium);
  if (!(tone.frequency > medium.sbs_doppler_shift))
    throw domain_error("doppler shift " + std::to_string(medium.sbs_doppler_shift) +
                       " must be below the tone frequency " + std::to_string(tone.frequency));
  return {medium.sbs_reflectivity * tone.amplitude, tone.frequency - medium.sbs_doppler_shift,
          tone.phase};
}

}  // namespace cyclekit
