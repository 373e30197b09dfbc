#pragma once

#include <complex>
#include <vector>

#include <unsupported/Eigen/FFT>

namespace cyclekit::detail {

// Unnormalized forward DFT, X_k = sum_n x_n e^{-2 pi i n k / N}. A fresh FFT
// object per call keeps planning state local (thread-safe); fine at desk scale.
inline std::vector<std::complex<double>> dft(const std::vector<double>& x) {
  Eigen::FFT<double> fft;
  std::vector<std::complex<double>> out;
  fft.fwd(out, x);
  return out;
}

inline std::vector<std::complex<double>> dft(const std::vector<std::complex<double>>& x) {
  Eigen::FFT<double> fft;
  std::vector<std::complex<double>> out;
  fft.fwd(out, x);
  return out;
}

}  // namespace cyclekit::detail
