#include "tempus/clock.hpp"

#include <cmath>
#include <numeric>

#include "tempus/fftutil.hpp"

namespace tempus {

CMat HamiltonianSpec::matrix() const {
  CMat d = eigenvalues.cast<Complex>().asDiagonal();
  if (!has_basis()) return d;
  return basis * d * basis.adjoint();
}

CMat HamiltonianSpec::unitary(double t) const {
  CVec phases(dim());
  for (int n = 0; n < dim(); ++n)
    phases[n] = std::exp(Complex(0.0, -eigenvalues[n] * t));
  CMat d = phases.asDiagonal();
  if (!has_basis()) return d;
  return basis * d * basis.adjoint();
}

bool HamiltonianSpec::integer_spectrum(double tol) const {
  for (int n = 0; n < dim(); ++n)
    if (std::abs(eigenvalues[n] - std::round(eigenvalues[n])) > tol)
      return false;
  return true;
}

std::vector<long> HamiltonianSpec::integer_levels() const {
  std::vector<long> out(static_cast<size_t>(dim()));
  for (int n = 0; n < dim(); ++n) out[size_t(n)] = lround(eigenvalues[n]);
  return out;
}

CMat clean_density(const CMat& rho, double clip) {
  Eigen::SelfAdjointEigenSolver<CMat> es(hermitize(rho));
  RVec lam = es.eigenvalues();
  for (int i = 0; i < lam.size(); ++i)
    if (lam[i] < 0.0 && lam[i] >= -clip) lam[i] = 0.0;
  CMat out = es.eigenvectors() * lam.asDiagonal() * es.eigenvectors().adjoint();
  double tr = out.trace().real();
  if (tr > 0.0) out /= tr;
  return out;
}

ValidationReport validate_clock(const QuantumClock& clock) {
  ValidationReport rep;
  rep.add("rho_hermitian", hermiticity_residual(clock.rho), 1e-10);
  rep.add("rho_trace_one", std::abs(clock.rho.trace().real() - 1.0), 1e-10);
  rep.add("rho_psd", std::max(0.0, -min_eigenvalue(clock.rho)), 1e-10);
  rep.add("hamiltonian_dim",
          std::abs(double(clock.hamiltonian.dim() - clock.dim())), 0.0);
  if (clock.hamiltonian.has_basis()) {
    const CMat& b = clock.hamiltonian.basis;
    rep.add("basis_unitary",
            (b.adjoint() * b - CMat::Identity(b.rows(), b.cols()))
                .cwiseAbs()
                .maxCoeff(),
            1e-10);
  }
  return rep;
}

QuantumClock evolve(const QuantumClock& clock, double t) {
  CMat u = clock.hamiltonian.unitary(t);
  return {u * clock.rho * u.adjoint(), clock.hamiltonian};
}

double clock_period(const HamiltonianSpec& h) {
  if (!h.integer_spectrum())
    throw std::invalid_argument("clock_period requires an integer spectrum");
  auto levels = h.integer_levels();
  long g = 0;
  for (size_t i = 1; i < levels.size(); ++i)
    g = std::gcd(g, std::labs(levels[i] - levels[0]));
  if (g == 0) return 2.0 * kPi;  // stationary; any period works
  return 2.0 * kPi / double(g);
}

QuantumClock evolve_periods(const QuantumClock& clock, double s) {
  return evolve(clock, s * clock_period(clock.hamiltonian));
}

CMat rho_dot(const QuantumClock& clock) {
  CMat h = clock.hamiltonian.matrix();
  return kI * (clock.rho * h - h * clock.rho);
}

QuantumClock coherent_state(Complex alpha, int cutoff) {
  if (cutoff < 1) throw std::invalid_argument("coherent_state: cutoff < 1");
  CVec f(cutoff);
  double logfact = 0.0;
  for (int n = 0; n < cutoff; ++n) {
    if (n > 0) logfact += std::log(double(n));
    f[n] = std::pow(alpha, n) * std::exp(-0.5 * std::norm(alpha)) /
           std::sqrt(std::exp(logfact));
  }
  double mass = f.squaredNorm();
  double tail = 1.0 - mass;
  if (tail > 1e-8)
    throw std::invalid_argument(
        "coherent_state: truncated tail mass " + std::to_string(tail) +
        " exceeds 1e-8; increase cutoff");
  f /= std::sqrt(mass);
  return pure_clock(f, HamiltonianSpec::ladder(cutoff));
}

ValidationReport validate_classical(const ClassicalCircleClock& clock) {
  ValidationReport rep;
  const int n = clock.grid();
  rep.add("density_normalized",
          std::abs(clock.density.sum() / double(n) - 1.0), 1e-9);
  rep.add("density_nonnegative", std::max(0.0, -clock.density.minCoeff()),
          1e-12);
  return rep;
}

ClassicalCircleClock evolve_classical(const ClassicalCircleClock& clock,
                                      double t) {
  double frac = clock.omega * t / (2.0 * kPi);
  return {circular_shift(clock.density, frac), clock.omega};
}

ClassicalCircleClock uniform_circle_clock(int n, double omega) {
  return {RVec::Ones(n), omega};
}

ClassicalCircleClock grid_delta_clock(int n, int k, double omega) {
  RVec p = RVec::Zero(n);
  p[k] = double(n);
  return {p, omega};
}

ClassicalCircleClock wrapped_gaussian_clock(int n, double center, double sigma,
                                            double omega) {
  RVec p = RVec::Zero(n);
  for (int k = 0; k < n; ++k) {
    double x = double(k) / n;
    for (int w = -8; w <= 8; ++w) {
      double d = x - center + double(w);
      p[k] += std::exp(-0.5 * d * d / (sigma * sigma));
    }
  }
  p *= double(n) / p.sum();
  return {p, omega};
}

QuantumClock pure_clock(const CVec& psi, HamiltonianSpec h) {
  CVec v = psi / psi.norm();
  return {v * v.adjoint(), std::move(h)};
}

}  // namespace tempus
