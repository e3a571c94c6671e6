#ifndef SPECTORI_FFT_HPP
#define SPECTORI_FFT_HPP

#include "spectori/types.hpp"

namespace spectori {

// Unnormalized forward transform uses the e^{-2 pi i (mj/n1 + nk/n2)} kernel;
// fft2Forward divides by n1*n2 so that fft2Forward followed by fft2Inverse is
// the identity and coefficient (0,0) is the mean.
Grid2c fft2Forward(const Grid2c& values);
Grid2c fft2Inverse(const Grid2c& coeffs);

// 1D helpers for line potentials.
Eigen::VectorXcd fft1Forward(const Eigen::VectorXcd& values);
Eigen::VectorXcd fft1Inverse(const Eigen::VectorXcd& coeffs);

// Signed frequency of FFT bin j on an n-point grid (n even uses -n/2).
inline int signedFrequency(int bin, int n) { return bin <= n / 2 - 1 + (n % 2) ? bin : bin - n; }

}  // namespace spectori

#endif
