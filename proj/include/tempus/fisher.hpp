#pragma once

#include "tempus/clock.hpp"

namespace tempus {

// Symmetric logarithmic derivative: the Hermitian L with
// (rho L + L rho)/2 = rho_dot on the support of rho.
CMat sld(const CMat& rho, const CMat& rho_dot);

// F(rho, H) = tr(rho_dot * L), the squared inverse of the optimal
// measurement's time error.
double quantum_fisher(const QuantumClock& clock);

// (omega/2pi)^2 * integral of p'(x)^2/p(x) over one period.
double classical_fisher(const ClassicalCircleClock& clock);

struct DiscretePOVM {
  std::vector<double> outcomes;
  std::vector<CMat> effects;
  int dim() const { return effects.empty() ? 0 : int(effects[0].rows()); }
};

ValidationReport validate_povm(const DiscretePOVM& povm);

// Squared drift-to-deviation ratio (v/w)^-2 of the labelled measurement.
double povm_snr(const QuantumClock& clock, const DiscretePOVM& povm);

// Spectral measurement of A = sum_j lambda_j Q_j; never worse than the
// input POVM.
DiscretePOVM projectivize_povm(const DiscretePOVM& povm);

// Uhlmann fidelity tr|sqrt(rho1) sqrt(rho2)|, the attained infimum of the
// measurement-based definition.
double fidelity(const CMat& rho1, const CMat& rho2);

// Empirical constant (2 - 2 f(rho, rho_dt)) / (F dt^2). Approximately 1/4
// (squared Bures distance = F dt^2 / 4 to leading order).
double bures_fisher_constant(const QuantumClock& clock, double dt = 1e-4);

}  // namespace tempus
