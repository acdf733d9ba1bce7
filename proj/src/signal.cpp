#include "tempus/signal.hpp"

#include <cmath>

#include "tempus/fftutil.hpp"

namespace tempus {

ValidationReport validate_wavefunction(const GridWavefunction& psi) {
  ValidationReport rep;
  rep.add("norm", std::abs(psi.dx * psi.values.squaredNorm() - 1.0), 1e-8);
  rep.add("grid_spacing_positive", psi.dx > 0.0 ? 0.0 : 1.0, 0.5);
  return rep;
}

GridWavefunction gaussian_wavepacket(int n, double dx, double e, double de) {
  if (n < 2 || dx <= 0.0 || de <= 0.0)
    throw std::invalid_argument("gaussian_wavepacket: bad parameters");
  GridWavefunction psi;
  psi.dx = dx;
  psi.values.resize(n);
  for (int k = 0; k < n; ++k) {
    double x = k * dx;
    psi.values[k] = std::exp(-(x - e) * (x - e) / (4.0 * de * de));
  }
  psi.values /= std::sqrt(dx) * psi.values.norm();
  return psi;
}

double energy_mean(const GridWavefunction& psi) {
  double m = 0.0;
  for (int k = 0; k < psi.n(); ++k)
    m += k * psi.dx * std::norm(psi.values[k]) * psi.dx;
  return m;
}

double input_timing_info(const GridWavefunction& psi) {
  double m = energy_mean(psi), m2 = 0.0;
  for (int k = 0; k < psi.n(); ++k) {
    double x = k * psi.dx;
    m2 += x * x * std::norm(psi.values[k]) * psi.dx;
  }
  return 4.0 * (m2 - m * m);
}

ValidationReport validate_joint(const JointGridWavefunction& joint) {
  ValidationReport rep;
  rep.add("norm",
          std::abs(joint.dx * joint.dx * joint.values.squaredNorm() - 1.0),
          1e-6);
  return rep;
}

JointGridWavefunction split(const GridWavefunction& psi) {
  const int n = psi.n();
  double low_mass = 0.0;
  for (int k = 0; k < n && k * psi.dx < 4.0 * psi.dx; ++k)
    low_mass += std::norm(psi.values[k]) * psi.dx;
  if (low_mass > 1e-8)
    throw std::invalid_argument(
        "split: wavefunction mass " + std::to_string(low_mass) +
        " below x = 4 dx; the 1/sqrt(x+y) kernel is singular there");
  JointGridWavefunction joint;
  joint.dx = psi.dx;
  joint.values = CMat::Zero(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      int s = j + k;
      if (s == 0 || s >= n) continue;
      double wj = (j == 0) ? 0.5 : 1.0;
      double wk = (k == 0) ? 0.5 : 1.0;
      joint.values(j, k) =
          std::sqrt(wj * wk) * psi.values[s] / std::sqrt(s * psi.dx);
    }
  return joint;
}

RVec total_energy_distribution(const JointGridWavefunction& joint) {
  const int n = joint.n();
  RVec p = RVec::Zero(2 * n - 1);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      p[j + k] += std::norm(joint.values(j, k)) * joint.dx * joint.dx;
  return p;
}

namespace {

// Mass pushed onto x < 0 when the frequency multiplier is applied on a
// doubled grid whose upper half represents the negative axis.
double axis_deficit(const CMat& m, double dx, bool rows) {
  const int n = int(m.rows());
  double neg = 0.0, total = 0.0;
  for (int other = 0; other < n; ++other) {
    CVec line = CVec::Zero(2 * n);
    for (int k = 0; k < n; ++k)
      line[k] = rows ? m(k, other) : m(other, k);
    CVec hat = fft(line);
    for (int k = 0; k < 2 * n; ++k)
      hat[k] *= 2.0 * kPi * fft_freq(k, 2 * n) / (2 * n * dx);
    CVec back = ifft(hat);
    for (int k = 0; k < 2 * n; ++k) {
      double w = std::norm(back[k]);
      total += w;
      if (k >= n) neg += w;
    }
  }
  return total > 0.0 ? neg / total : 0.0;
}

}  // namespace

TimingEstimate output_timing_info(const JointGridWavefunction& joint) {
  const int n = joint.n();
  TimingEstimate est;
  est.norm_residual =
      std::abs(joint.dx * joint.dx * joint.values.squaredNorm() - 1.0);

  CMat hat = joint.values;
  fft2_inplace(hat);
  double total = hat.squaredNorm();
  double m1 = 0.0, m2 = 0.0, v1 = 0.0, v2 = 0.0, cross = 0.0;
  for (int j = 0; j < n; ++j) {
    double t1 = 2.0 * kPi * fft_freq(j, n) / (n * joint.dx);
    for (int k = 0; k < n; ++k) {
      double t2 = 2.0 * kPi * fft_freq(k, n) / (n * joint.dx);
      double p = std::norm(hat(j, k)) / total;
      m1 += p * t1;
      m2 += p * t2;
      v1 += p * t1 * t1;
      v2 += p * t2 * t2;
      cross += p * t1 * t2;
    }
  }
  est.var1 = v1 - m1 * m1;
  est.var2 = v2 - m2 * m2;
  double cov = cross - m1 * m2;
  est.correlation = cov / std::sqrt(est.var1 * est.var2);
  est.f1_est = 1.0 / est.var1;
  est.f2_est = 1.0 / est.var2;

  CMat amp = joint.values * joint.dx;
  CMat rho1 = amp * amp.adjoint();
  double tr = rho1.trace().real();
  est.purity1 = (rho1 * rho1).trace().real() / (tr * tr);

  est.positive_frequency_deficit =
      std::max(axis_deficit(joint.values, joint.dx, true),
               axis_deficit(joint.values, joint.dx, false));
  return est;
}

}  // namespace tempus
