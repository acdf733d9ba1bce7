#pragma once

#include "tempus/linalg.hpp"

namespace tempus {

// Forward/inverse DFT, sign convention X_k = sum_j x_j exp(-2*pi*i*j*k/N).
// The inverse carries the 1/N factor.
CVec fft(const CVec& x);
CVec ifft(const CVec& x);

// In-place 2D DFT of a row-major matrix (same sign convention).
void fft2_inplace(CMat& m);

// Signed DFT frequency m for bin k of an N-point grid (m in [-N/2, N/2)).
inline double fft_freq(int k, int N) {
  return (k <= (N - 1) / 2) ? double(k) : double(k - N);
}

// Rotate a periodic density on the unit grid [0,1) by `frac` periods using
// FFT phase shifts (exact for band-limited data).
RVec circular_shift(const RVec& p, double frac);

// d/dx of a periodic function sampled on x_k = k/N, spectral accuracy.
RVec spectral_derivative(const RVec& p);

}  // namespace tempus
