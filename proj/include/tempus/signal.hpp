#pragma once

#include "tempus/clock.hpp"

namespace tempus {

// Amplitudes on the half-line energy grid x_k = k * dx.
struct GridWavefunction {
  CVec values;
  double dx = 0.0;
  int n() const { return int(values.size()); }
};

ValidationReport validate_wavefunction(const GridWavefunction& psi);

// |psi|^2 Gaussian with mean e and standard deviation de, normalized to
// dx * sum |psi|^2 = 1.
GridWavefunction gaussian_wavepacket(int n, double dx, double e, double de);

// F = 4 Var(x); the pure-state Fisher formula for H = multiplication by x.
double input_timing_info(const GridWavefunction& psi);

double energy_mean(const GridWavefunction& psi);

struct JointGridWavefunction {
  CMat values;  // (j, k) -> amplitude at (x_j, y_k), quadrature folded in
  double dx = 0.0;
  int n() const { return int(values.rows()); }
};

ValidationReport validate_joint(const JointGridWavefunction& joint);

// The splitting isometry psi(x + y)/sqrt(x + y). Trapezoid quadrature
// weights are folded into the stored amplitudes so the plain grid sum is
// the correct half-line integral. Throws if psi carries more than 1e-8 of
// its mass below x = 4 dx (the 1/sqrt singularity).
JointGridWavefunction split(const GridWavefunction& psi);

// Total-energy distribution p(s) on s = (j + k) dx, length 2N - 1.
RVec total_energy_distribution(const JointGridWavefunction& joint);

struct TimingEstimate {
  double f1_est = 0.0, f2_est = 0.0;  // 1 / Var(T x 1), 1 / Var(1 x T)
  double correlation = 0.0;           // of the two time observables
  double var1 = 0.0, var2 = 0.0;
  double purity1 = 0.0;               // tr(rho_1^2) of the first marginal
  double norm_residual = 0.0;
  double positive_frequency_deficit = 0.0;  // F F^dagger != 1 diagnostic
};

// Per-axis time observables via the 2D DFT; the time drift is exactly 1,
// so the SNR estimate is 1/Var. No correction is applied for the
// positive-frequency projector; its mass deficit is reported instead.
TimingEstimate output_timing_info(const JointGridWavefunction& joint);

}  // namespace tempus
