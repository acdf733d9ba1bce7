#include "tempus/fisher.hpp"

#include <cmath>

#include "tempus/fftutil.hpp"

namespace tempus {

CMat sld(const CMat& rho, const CMat& rd) {
  if (hermiticity_residual(rd) > 1e-8)
    throw std::invalid_argument("sld: rho_dot is not Hermitian");
  Eigen::SelfAdjointEigenSolver<CMat> es(hermitize(rho));
  const RVec lam = es.eigenvalues();
  const CMat& v = es.eigenvectors();
  const double eps = 1e-10 * lam.cwiseAbs().maxCoeff();
  CMat rd_eig = v.adjoint() * rd * v;
  CMat l_eig = CMat::Zero(rho.rows(), rho.cols());
  for (int j = 0; j < lam.size(); ++j)
    for (int k = 0; k < lam.size(); ++k) {
      double denom = lam[j] + lam[k];
      if (denom > eps) l_eig(j, k) = 2.0 * rd_eig(j, k) / denom;
    }
  return v * l_eig * v.adjoint();
}

double quantum_fisher(const QuantumClock& clock) {
  CMat rd = rho_dot(clock);
  CMat l = sld(clock.rho, rd);
  double f = (rd * l).trace().real();
  return std::max(0.0, f);
}

double classical_fisher(const ClassicalCircleClock& clock) {
  const int n = clock.grid();
  RVec dp = spectral_derivative(clock.density);
  double acc = 0.0;
  for (int k = 0; k < n; ++k) {
    if (clock.density[k] < 1e-12) continue;  // zero-density bins drop out
    acc += dp[k] * dp[k] / clock.density[k];
  }
  acc /= double(n);
  double v = clock.omega / (2.0 * kPi);
  return v * v * acc;
}

ValidationReport validate_povm(const DiscretePOVM& povm) {
  ValidationReport rep;
  const int d = povm.dim();
  CMat sum = CMat::Zero(d, d);
  double min_eig = 0.0;
  for (const auto& q : povm.effects) {
    sum += q;
    min_eig = std::min(min_eig, min_eigenvalue(q));
  }
  rep.add("povm_complete",
          (sum - CMat::Identity(d, d)).cwiseAbs().maxCoeff(), 1e-9);
  rep.add("effects_psd", std::max(0.0, -min_eig), 1e-9);
  rep.add("outcome_count",
          std::abs(double(povm.outcomes.size() - povm.effects.size())), 0.0);
  return rep;
}

double povm_snr(const QuantumClock& clock, const DiscretePOVM& povm) {
  auto rep = validate_povm(povm);
  if (!rep.ok()) throw std::invalid_argument("povm_snr: invalid POVM");
  const int d = povm.dim();
  CMat a = CMat::Zero(d, d);
  double mean = 0.0, second = 0.0;
  for (size_t j = 0; j < povm.effects.size(); ++j) {
    a += povm.outcomes[j] * povm.effects[j];
    double pj = (clock.rho * povm.effects[j]).trace().real();
    mean += povm.outcomes[j] * pj;
    second += povm.outcomes[j] * povm.outcomes[j] * pj;
  }
  double var = second - mean * mean;
  double drift = (rho_dot(clock) * a).trace().real();
  if (std::abs(drift) < 1e-14) return 0.0;
  if (var < 1e-14)
    throw std::domain_error("povm_snr: zero variance with nonzero drift");
  return drift * drift / var;
}

DiscretePOVM projectivize_povm(const DiscretePOVM& povm) {
  const int d = povm.dim();
  CMat a = CMat::Zero(d, d);
  for (size_t j = 0; j < povm.effects.size(); ++j)
    a += povm.outcomes[j] * povm.effects[j];
  Eigen::SelfAdjointEigenSolver<CMat> es(hermitize(a));
  DiscretePOVM out;
  for (int k = 0; k < d; ++k) {
    CVec v = es.eigenvectors().col(k);
    out.outcomes.push_back(es.eigenvalues()[k]);
    out.effects.push_back(v * v.adjoint());
  }
  return out;
}

double fidelity(const CMat& rho1, const CMat& rho2) {
  if (rho1.rows() != rho2.rows())
    throw std::invalid_argument("fidelity: dimension mismatch");
  return trace_norm(matrix_sqrt_psd(rho1) * matrix_sqrt_psd(rho2));
}

double bures_fisher_constant(const QuantumClock& clock, double dt) {
  double f = quantum_fisher(clock);
  if (f < 1e-12)
    throw std::domain_error("bures_fisher_constant: trivial clock (F = 0)");
  QuantumClock moved = evolve(clock, dt);
  double d2 = 2.0 - 2.0 * fidelity(clock.rho, moved.rho);
  return d2 / (f * dt * dt);
}

}  // namespace tempus
