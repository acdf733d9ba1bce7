#include <doctest.h>

#include "tempus/channels.hpp"
#include "tempus/fisher.hpp"

using namespace tempus;

namespace {

double variance_of_h(const QuantumClock& c) {
  CMat h = c.hamiltonian.matrix();
  double m = (c.rho * h).trace().real();
  return (c.rho * h * h).trace().real() - m * m;
}

}  // namespace

TEST_CASE("pure-state Fisher information equals 4 Var(H)") {
  Rng rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    int d = 2 + int(rng() % 5);
    QuantumClock c = pure_clock(random_unit_vector(d, rng),
                                HamiltonianSpec::ladder(d));
    CHECK(quantum_fisher(c) ==
          doctest::Approx(4.0 * variance_of_h(c)).epsilon(1e-10));
  }
}

TEST_CASE("qubit Bloch formula cross-check") {
  // rho = (1 + 0.5 sigma_x)/2 precessing about z at unit rate: F = 1/4
  CMat rho(2, 2);
  rho << 0.5, 0.25, 0.25, 0.5;
  QuantumClock c{rho, HamiltonianSpec::ladder(2)};
  CHECK(quantum_fisher(c) == doctest::Approx(0.25).epsilon(1e-10));
}

TEST_CASE("sld solves the defining equation on the support") {
  Rng rng(3);
  CMat rho = random_density(4, rng);
  QuantumClock c{rho, HamiltonianSpec::ladder(4)};
  CMat rd = rho_dot(c);
  CMat l = sld(rho, rd);
  CHECK(hermiticity_residual(l) < 1e-9);
  CHECK((0.5 * (rho * l + l * rho) - rd).cwiseAbs().maxCoeff() < 1e-8);
  CHECK_THROWS_AS(sld(rho, CMat(kI * CMat::Identity(4, 4))),
                  std::invalid_argument);
}

TEST_CASE("trivial clocks carry zero Fisher information") {
  CMat rho = CMat::Zero(3, 3);
  rho(0, 0) = 0.6;
  rho(2, 2) = 0.4;
  CHECK(quantum_fisher({rho, HamiltonianSpec::ladder(3)}) < 1e-14);
}

TEST_CASE("classical Fisher information closed forms") {
  const int n = 1024;
  // p(x) = 1 + cos(2 pi x): integral of p'^2/p over [0,1) is (2 pi)^2 / 2
  // ... times the omega scaling this gives F = omega^2 / 2 * 2 = omega^2
  RVec p(n);
  for (int k = 0; k < n; ++k)
    p[k] = 1.0 + std::cos(2.0 * kPi * k / n);
  ClassicalCircleClock c{p, 3.0};
  // closed form: (omega/2pi)^2 * (2pi)^2 = omega^2 for this density; the
  // grid sum converges slowly near the zero of p, hence the loose tolerance
  CHECK(classical_fisher(c) == doctest::Approx(9.0).epsilon(1e-2));

  auto g = wrapped_gaussian_clock(2048, 0.5, 0.1, 2.0 * kPi);
  CHECK(classical_fisher(g) == doctest::Approx(100.0).epsilon(1e-4));

  CHECK(classical_fisher(uniform_circle_clock(256)) < 1e-12);
}

TEST_CASE("povm snr never beats the Fisher bound and projectivizing helps") {
  CVec plus(2);
  plus << 1.0, 1.0;
  QuantumClock c = pure_clock(plus, HamiltonianSpec::ladder(2));
  double f = quantum_fisher(c);

  // smeared measurement of sigma_y (the optimal observable direction)
  CMat sy(2, 2);
  sy << 0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0;
  Eigen::SelfAdjointEigenSolver<CMat> es(sy);
  DiscretePOVM povm;
  for (int k = 0; k < 2; ++k) {
    CVec v = es.eigenvectors().col(k);
    CMat proj = v * v.adjoint();
    povm.outcomes.push_back(es.eigenvalues()[k]);
    povm.effects.push_back(0.8 * proj + 0.1 * CMat::Identity(2, 2));
  }
  CHECK(validate_povm(povm).ok());
  double snr = povm_snr(c, povm);
  CHECK(snr <= f + 1e-10);
  double proj_snr = povm_snr(c, projectivize_povm(povm));
  CHECK(proj_snr >= snr - 1e-10);
  CHECK(proj_snr == doctest::Approx(f).epsilon(1e-9));
}

TEST_CASE("povm snr degenerate cases") {
  CMat rho = CMat::Zero(2, 2);
  rho(0, 0) = 1.0;
  QuantumClock stationary{rho, HamiltonianSpec::ladder(2)};
  DiscretePOVM povm;
  povm.outcomes = {0.0, 1.0};
  CMat p0 = CMat::Zero(2, 2), p1 = CMat::Zero(2, 2);
  p0(0, 0) = 1.0;
  p1(1, 1) = 1.0;
  povm.effects = {p0, p1};
  CHECK(povm_snr(stationary, povm) == 0.0);  // no drift
}

TEST_CASE("fidelity properties") {
  Rng rng(9);
  CMat a = random_density(3, rng), b = random_density(3, rng);
  CHECK(fidelity(a, a) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(fidelity(a, b) == doctest::Approx(fidelity(b, a)).epsilon(1e-10));
  CHECK(fidelity(a, b) <= 1.0 + 1e-12);
  CHECK_THROWS_AS(fidelity(a, CMat(CMat::Identity(2, 2) * 0.5)),
                  std::invalid_argument);
}

TEST_CASE("bures constant is one quarter and dt-stable") {
  Rng rng(21);
  QuantumClock c{random_density(3, rng), HamiltonianSpec::ladder(3)};
  double c3 = bures_fisher_constant(c, 1e-3);
  double c4 = bures_fisher_constant(c, 1e-4);
  CHECK(std::abs(c3 - c4) / c4 < 0.01);
  CHECK(c4 == doctest::Approx(0.25).epsilon(1e-3));
  CMat diag = CMat::Zero(2, 2);
  diag(0, 0) = 0.5;
  diag(1, 1) = 0.5;
  CHECK_THROWS_AS(
      bures_fisher_constant({diag, HamiltonianSpec::ladder(2)}, 1e-4),
      std::domain_error);
}

TEST_CASE("quantum-to-classical transfer never gains information") {
  CVec plus(2);
  plus << 1.0, 1.0;
  QuantumClock c = pure_clock(plus, HamiltonianSpec::ladder(2));
  auto povm = canonical_phase_povm(2, 256);
  auto cl = q2c_transfer(c, povm);
  CHECK(classical_fisher(cl) <= quantum_fisher(c) + 1e-6);
  // the canonical measurement of the equatorial qubit is optimal up to the
  // finite measurement grid (256 outcomes)
  CHECK(classical_fisher(cl) == doctest::Approx(1.0).epsilon(1e-2));
}
