#include "tempus/fftutil.hpp"

#include <fftw3.h>

#include <mutex>

namespace tempus {

namespace {
// FFTW's planner is not thread safe; execution is.
std::mutex planner_mutex;

void run_fft_1d(const Complex* in, Complex* out, int n, int sign) {
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(planner_mutex);
    plan = fftw_plan_dft_1d(
        n, reinterpret_cast<fftw_complex*>(const_cast<Complex*>(in)),
        reinterpret_cast<fftw_complex*>(out), sign, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  std::lock_guard<std::mutex> lock(planner_mutex);
  fftw_destroy_plan(plan);
}
}  // namespace

CVec fft(const CVec& x) {
  CVec out(x.size());
  run_fft_1d(x.data(), out.data(), int(x.size()), FFTW_FORWARD);
  return out;
}

CVec ifft(const CVec& x) {
  CVec out(x.size());
  run_fft_1d(x.data(), out.data(), int(x.size()), FFTW_BACKWARD);
  return out / double(x.size());
}

void fft2_inplace(CMat& m) {
  const int rows = int(m.rows()), cols = int(m.cols());
  // Eigen stores column-major; FFTW expects row-major. Dimensions swapped.
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(planner_mutex);
    plan = fftw_plan_dft_2d(cols, rows,
                            reinterpret_cast<fftw_complex*>(m.data()),
                            reinterpret_cast<fftw_complex*>(m.data()),
                            FFTW_FORWARD, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  std::lock_guard<std::mutex> lock(planner_mutex);
  fftw_destroy_plan(plan);
}

RVec circular_shift(const RVec& p, double frac) {
  const int n = int(p.size());
  CVec spec = fft(p.cast<Complex>());
  for (int k = 0; k < n; ++k) {
    double m = fft_freq(k, n);
    spec[k] *= std::exp(Complex(0.0, -2.0 * kPi * m * frac));
  }
  return ifft(spec).real();
}

RVec spectral_derivative(const RVec& p) {
  const int n = int(p.size());
  CVec spec = fft(p.cast<Complex>());
  for (int k = 0; k < n; ++k)
    spec[k] *= Complex(0.0, 2.0 * kPi * fft_freq(k, n));
  return ifft(spec).real();
}

}  // namespace tempus
