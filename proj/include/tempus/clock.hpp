#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tempus/linalg.hpp"

namespace tempus {

struct CheckItem {
  std::string name;
  double residual = 0.0;
  double tol = 0.0;
  bool pass = true;
};

struct ValidationReport {
  std::vector<CheckItem> items;
  bool ok() const {
    for (const auto& it : items)
      if (!it.pass) return false;
    return true;
  }
  void add(std::string name, double residual, double tol) {
    items.push_back({std::move(name), residual, tol, residual <= tol});
  }
};

// Hamiltonian given by its spectrum and (optionally) its eigenbasis.
// An empty basis means the computational basis.
struct HamiltonianSpec {
  RVec eigenvalues;
  CMat basis;  // d x d unitary, columns = eigenvectors; empty => identity

  int dim() const { return int(eigenvalues.size()); }
  bool has_basis() const { return basis.size() > 0; }
  CMat basis_or_identity() const {
    return has_basis() ? basis : CMat(CMat::Identity(dim(), dim()));
  }
  CMat matrix() const;
  CMat unitary(double t) const;  // exp(-i H t)
  bool integer_spectrum(double tol = 1e-9) const;
  std::vector<long> integer_levels() const;

  static HamiltonianSpec ladder(int d) {  // H|n> = n|n>
    HamiltonianSpec h;
    h.eigenvalues = RVec::LinSpaced(d, 0.0, double(d - 1));
    return h;
  }
  static HamiltonianSpec diag(std::vector<double> ev) {
    HamiltonianSpec h;
    h.eigenvalues = Eigen::Map<RVec>(ev.data(), long(ev.size()));
    return h;
  }
};

struct QuantumClock {
  CMat rho;
  HamiltonianSpec hamiltonian;
  int dim() const { return int(rho.rows()); }
};

// Clip tiny negative eigenvalues (numerical noise) and renormalize.
CMat clean_density(const CMat& rho, double clip = 1e-10);

ValidationReport validate_clock(const QuantumClock& clock);

QuantumClock evolve(const QuantumClock& clock, double t);

// Recurrence time of an integer-spectrum clock: 2*pi / gcd of level gaps.
double clock_period(const HamiltonianSpec& h);

// evolve by s periods (integer-spectrum clocks only).
QuantumClock evolve_periods(const QuantumClock& clock, double s);

CMat rho_dot(const QuantumClock& clock);  // i [rho, H]

// Truncated Glauber state with H|n> = n|n>. Throws if the truncated tail
// mass exceeds 1e-8.
QuantumClock coherent_state(Complex alpha, int cutoff);

struct ClassicalCircleClock {
  RVec density;  // p(t_k) on t_k = k/N, (1/N) sum p = 1
  double omega = 2.0 * kPi;
  int grid() const { return int(density.size()); }
};

ValidationReport validate_classical(const ClassicalCircleClock& clock);

ClassicalCircleClock evolve_classical(const ClassicalCircleClock& clock,
                                      double t);

ClassicalCircleClock uniform_circle_clock(int n, double omega = 2.0 * kPi);
ClassicalCircleClock grid_delta_clock(int n, int k, double omega = 2.0 * kPi);
// Wrapped Gaussian density centered at `center` (fraction of a period)
// with standard deviation `sigma` (also in periods).
ClassicalCircleClock wrapped_gaussian_clock(int n, double center, double sigma,
                                            double omega = 2.0 * kPi);

QuantumClock pure_clock(const CVec& psi, HamiltonianSpec h);

}  // namespace tempus
