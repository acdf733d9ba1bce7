#include <doctest.h>

#include "tempus/clock.hpp"
#include "tempus/fftutil.hpp"

using namespace tempus;

TEST_CASE("hamiltonian matrix and unitary group property") {
  Rng rng(11);
  CMat g = ginibre(3, 3, rng);
  Eigen::HouseholderQR<CMat> qr(g);
  HamiltonianSpec h;
  h.eigenvalues = RVec::Zero(3);
  h.eigenvalues << 0.0, 1.3, 2.7;
  h.basis = qr.householderQ() * CMat::Identity(3, 3);
  CMat u1 = h.unitary(0.4), u2 = h.unitary(1.1), u12 = h.unitary(1.5);
  CHECK((u1 * u2 - u12).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((u1 * u1.adjoint() - CMat::Identity(3, 3)).cwiseAbs().maxCoeff() <
        1e-12);
  CHECK((h.unitary(0.0) - CMat::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-14);
  CHECK_FALSE(h.integer_spectrum());
  CHECK(HamiltonianSpec::ladder(4).integer_spectrum());
}

TEST_CASE("evolution preserves spectrum, trace and hermiticity") {
  Rng rng(5);
  QuantumClock c{random_density(4, rng), HamiltonianSpec::ladder(4)};
  Eigen::SelfAdjointEigenSolver<CMat> before(c.rho);
  QuantumClock e = evolve(c, 0.83);
  Eigen::SelfAdjointEigenSolver<CMat> after(e.rho);
  CHECK((before.eigenvalues() - after.eigenvalues()).cwiseAbs().maxCoeff() <
        1e-12);
  CHECK(std::abs(e.rho.trace().real() - 1.0) < 1e-12);
  CHECK(hermiticity_residual(e.rho) < 1e-12);
}

TEST_CASE("clock period and whole-period recurrence") {
  CHECK(clock_period(HamiltonianSpec::ladder(3)) ==
        doctest::Approx(2.0 * kPi));
  // gap-2 spectrum recurs twice as fast
  CHECK(clock_period(HamiltonianSpec::diag({0.0, 2.0, 4.0})) ==
        doctest::Approx(kPi));
  Rng rng(7);
  for (auto h : {HamiltonianSpec::ladder(4),
                 HamiltonianSpec::diag({1.0, 3.0, 7.0})}) {
    QuantumClock c{random_density(h.dim(), rng), h};
    QuantumClock back = evolve_periods(c, 1.0);
    CHECK((back.rho - c.rho).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("stationary clocks do not move") {
  CMat rho = CMat::Zero(3, 3);
  rho(0, 0) = 0.2;
  rho(1, 1) = 0.5;
  rho(2, 2) = 0.3;
  QuantumClock c{rho, HamiltonianSpec::ladder(3)};
  CHECK((evolve(c, 1.234).rho - rho).cwiseAbs().maxCoeff() < 1e-14);
  CHECK(rho_dot(c).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("validation catches broken inputs") {
  QuantumClock good{CMat::Identity(2, 2) * 0.5, HamiltonianSpec::ladder(2)};
  CHECK(validate_clock(good).ok());
  QuantumClock bad_trace{CMat::Identity(2, 2), HamiltonianSpec::ladder(2)};
  CHECK_FALSE(validate_clock(bad_trace).ok());
  QuantumClock bad_dim{CMat::Identity(2, 2) * 0.5,
                       HamiltonianSpec::ladder(3)};
  CHECK_FALSE(validate_clock(bad_dim).ok());
  CMat neg = CMat::Zero(2, 2);
  neg(0, 0) = 1.2;
  neg(1, 1) = -0.2;
  CHECK_FALSE(validate_clock({neg, HamiltonianSpec::ladder(2)}).ok());
}

TEST_CASE("clean_density clips numerical negatives") {
  CMat rho = CMat::Zero(2, 2);
  rho(0, 0) = 1.0 + 5e-11;
  rho(1, 1) = -5e-11;
  CMat c = clean_density(rho);
  CHECK(min_eigenvalue(c) >= 0.0);
  CHECK(std::abs(c.trace().real() - 1.0) < 1e-14);
}

TEST_CASE("coherent state basics") {
  CHECK_THROWS_AS(coherent_state(2.0, 4), std::invalid_argument);
  QuantumClock c = coherent_state(0.5, 12);
  CHECK(validate_clock(c).ok());
  double mean = (c.rho * c.hamiltonian.matrix()).trace().real();
  CHECK(mean == doctest::Approx(0.25).epsilon(1e-6));
}

TEST_CASE("classical clocks: normalization and rigid rotation") {
  auto g = wrapped_gaussian_clock(128, 0.3, 0.05);
  CHECK(validate_classical(g).ok());
  auto d = grid_delta_clock(64, 10);
  // one grid step is 1/64 of a period
  auto moved = evolve_classical(d, 2.0 * kPi / 64.0 / d.omega * 3.0);
  CHECK(moved.density[13] == doctest::Approx(64.0).epsilon(1e-9));
  auto u = uniform_circle_clock(32);
  auto u2 = evolve_classical(u, 0.77);
  CHECK((u2.density - u.density).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("wrapped gaussian wraps consistently across the seam") {
  auto g = wrapped_gaussian_clock(256, 0.0, 0.05);
  CHECK(g.density[1] == doctest::Approx(g.density[255]).epsilon(1e-10));
  CHECK(validate_classical(g).ok());
}
