#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "cyclekit/errors.hpp"
#include "cyclekit/time_series.hpp"

namespace cyclekit {

// Hodrick-Prescott decomposition y = g + c, where g minimizes
//   sum (y_t - g_t)^2 + lambda * sum ((g_{t+1} - g_t) - (g_t - g_{t-1}))^2.
struct TrendCycleDecomposition {
  TimeSeries source;
  TimeSeries trend;
  TimeSeries cycle;
  double lambda = 0.0;
};

namespace detail {

// Solve A x = b for pentadiagonal SPD A given by its main diagonal d0 and
// first/second sub-diagonals e1, e2 (A is symmetric). Banded Cholesky
// A = L L^T with bandwidth 2; O(T).
inline std::vector<double> solve_pentadiagonal(std::vector<double> d0, std::vector<double> e1,
                                               std::vector<double> e2, std::vector<double> b) {
  const std::size_t n = d0.size();
  std::vector<double> l0(n, 0.0), l1(n, 0.0), l2(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double v = d0[i];
    if (i >= 1) v -= l1[i - 1] * l1[i - 1];
    if (i >= 2) v -= l2[i - 2] * l2[i - 2];
    l0[i] = std::sqrt(v);
    if (i + 1 < n) {
      double w = e1[i];
      if (i >= 1) w -= l1[i - 1] * l2[i - 1];
      l1[i] = w / l0[i];
    }
    if (i + 2 < n) l2[i] = e2[i] / l0[i];
  }
  // Forward substitution L z = b (reuse b as z), then back substitution.
  for (std::size_t i = 0; i < n; ++i) {
    double v = b[i];
    if (i >= 1) v -= l1[i - 1] * b[i - 1];
    if (i >= 2) v -= l2[i - 2] * b[i - 2];
    b[i] = v / l0[i];
  }
  for (std::size_t k = n; k-- > 0;) {
    double v = b[k];
    if (k + 1 < n) v -= l1[k] * b[k + 1];
    if (k + 2 < n) v -= l2[k] * b[k + 2];
    b[k] = v / l0[k];
  }
  return b;
}

}  // namespace detail

inline double hp_objective(const TimeSeries& y, const TimeSeries& g, double lambda) {
  if (y.values.size() != g.values.size()) throw size_error("hp_objective: length mismatch");
  if (y.values.size() < 3) throw size_error("hp_objective requires length >= 3");
  if (lambda < 0.0) throw domain_error("lambda must be >= 0");
  double resid = 0.0, curv = 0.0;
  for (std::size_t t = 0; t < y.values.size(); ++t) {
    double r = y.values[t] - g.values[t];
    resid += r * r;
  }
  for (std::size_t t = 0; t + 2 < g.values.size(); ++t) {
    double d2 = g.values[t] - 2.0 * g.values[t + 1] + g.values[t + 2];
    curv += d2 * d2;
  }
  return resid + lambda * curv;
}

inline TrendCycleDecomposition hp_filter(const TimeSeries& series, double lambda) {
  validate(series);
  const std::size_t T = series.values.size();
  if (T < 3) throw size_error("hp_filter requires length >= 3");
  if (lambda < 0.0) throw domain_error("lambda must be >= 0");

  const std::vector<double>& y = series.values;

  // Solve for the cycle directly: (I + lambda K'K) c = lambda K'K y, g = y - c.
  // Identical to (I + lambda K'K) g = y, but the right-hand side vanishes with
  // the second differences of y, so a smooth series stays accurate even when
  // lambda is huge (the g-form loses ~eps*lambda relative accuracy).
  std::vector<double> d0(T, 1.0), e1(T, 0.0), e2(T, 0.0), b(T, 0.0);
  for (std::size_t r = 0; r + 2 < T; ++r) {
    // Row r of K has stencil [1, -2, 1] at columns r, r+1, r+2.
    d0[r] += lambda;
    d0[r + 1] += 4.0 * lambda;
    d0[r + 2] += lambda;
    e1[r] += -2.0 * lambda;
    e1[r + 1] += -2.0 * lambda;
    e2[r] += lambda;
    double d2y = y[r] - 2.0 * y[r + 1] + y[r + 2];
    b[r] += lambda * d2y;
    b[r + 1] -= 2.0 * lambda * d2y;
    b[r + 2] += lambda * d2y;
  }
  std::vector<double> c = detail::solve_pentadiagonal(std::move(d0), std::move(e1), std::move(e2), std::move(b));

  TrendCycleDecomposition out;
  out.source = series;
  out.lambda = lambda;
  out.trend = series;
  out.cycle = series;
  out.trend.label = series.label.empty() ? "trend" : series.label + " trend";
  out.cycle.label = series.label.empty() ? "cycle" : series.label + " cycle";
  for (std::size_t t = 0; t < T; ++t) {
    out.cycle.values[t] = c[t];
    out.trend.values[t] = y[t] - c[t];
  }
  return out;
}

}  // namespace cyclekit
