#include <doctest.h>

#include "tempus/fisher.hpp"
#include "tempus/order.hpp"

using namespace tempus;

namespace {

QuantumClock uniform_level_clock(int d) {
  CVec psi = CVec::Ones(d);
  return pure_clock(psi, HamiltonianSpec::ladder(d));
}

}  // namespace

TEST_CASE("hermitian packing is a Euclidean isometry") {
  Rng rng(3);
  CMat g = ginibre(4, 4, rng);
  CMat m = g + g.adjoint();
  RVec x = pack_hermitian(m);
  CHECK(x.size() == herm_param_count(4));
  CHECK(x.norm() == doctest::Approx(m.norm()).epsilon(1e-12));
  CHECK((unpack_hermitian(x, 4) - m).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("every clock reaches itself and any stationary target") {
  Rng rng(19);
  QuantumClock c{random_density(3, rng), HamiltonianSpec::ladder(3)};
  auto self = order_feasible(c, c, 1e-6, 20000);
  CHECK(self.feasible);
  CHECK(self.residual < 1e-6);

  CMat stat = CMat::Zero(2, 2);
  stat(0, 0) = 0.7;
  stat(1, 1) = 0.3;
  QuantumClock target{stat, HamiltonianSpec::ladder(2)};
  CHECK(order_feasible(c, target, 1e-6, 20000).feasible);
}

TEST_CASE("four uniform levels reach the equatorial qubit exactly") {
  CVec plus(2);
  plus << 1.0, 1.0;
  QuantumClock target = pure_clock(plus, HamiltonianSpec::ladder(2));
  auto v = order_feasible(uniform_level_clock(4), target, 1e-7, 50000);
  REQUIRE(v.feasible);
  CHECK(v.residual < 1e-7);
  REQUIRE(v.has_witness);
  // the witness channel really does the job
  CMat rho = uniform_level_clock(4).rho;
  CMat out = apply_channel(v.witness, rho);
  CHECK((out - target.rho).cwiseAbs().maxCoeff() < 1e-6);
  CHECK(v.witness.tp_residual() < 1e-6);
  CHECK(v.witness.psd_residual() < 1e-8);
}

TEST_CASE("three uniform levels fall short of the equatorial qubit") {
  CVec plus(2);
  plus << 1.0, 1.0;
  QuantumClock target = pure_clock(plus, HamiltonianSpec::ladder(2));
  auto v = order_feasible(uniform_level_clock(3), target, 1e-6, 50000);
  CHECK_FALSE(v.feasible);
  // best achievable squared overlap: (1 + 2 sqrt(2)/3) / 2
  double expected = 0.5 * (1.0 + 2.0 * std::sqrt(2.0) / 3.0);
  CHECK(v.fidelity_achieved == doctest::Approx(expected).epsilon(1e-3));
}

TEST_CASE("fisher information never increases along a witness") {
  Rng rng(23);
  QuantumClock c{random_density(4, rng), HamiltonianSpec::ladder(4)};
  CMat sigma = apply_channel(
      kraus_to_choi(random_covariant_channel(HamiltonianSpec::ladder(4),
                                             HamiltonianSpec::ladder(2), rng)),
      c.rho);
  QuantumClock target{clean_density(sigma), HamiltonianSpec::ladder(2)};
  auto v = order_feasible(c, target, 1e-6, 30000);
  REQUIRE(v.feasible);
  REQUIRE(v.has_witness);
  QuantumClock reached{clean_density(apply_channel(v.witness, c.rho)),
                       target.hamiltonian};
  CHECK(quantum_fisher(reached) <= quantum_fisher(c) + 1e-6);
}

TEST_CASE("maximum preparation fidelity saturates for reachable targets") {
  CVec plus(2);
  plus << 1.0, 1.0;
  plus /= std::sqrt(2.0);
  QuantumClock c = pure_clock(plus, HamiltonianSpec::ladder(2));
  auto r = max_prep_fidelity(c, plus, HamiltonianSpec::ladder(2), 1e-4, 20000);
  CHECK(r.fidelity == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("preparation fidelity is monotone under pre-processing") {
  Rng rng(29);
  CVec plus(2);
  plus << 1.0, 1.0;
  plus /= std::sqrt(2.0);
  QuantumClock c = uniform_level_clock(3);
  double base =
      max_prep_fidelity(c, plus, HamiltonianSpec::ladder(2), 1e-3, 20000)
          .fidelity;
  for (int trial = 0; trial < 3; ++trial) {
    auto pre = kraus_to_choi(random_covariant_channel(
        HamiltonianSpec::ladder(3), HamiltonianSpec::ladder(3), rng));
    QuantumClock degraded{clean_density(apply_channel(pre, c.rho)),
                          HamiltonianSpec::ladder(3)};
    double f = max_prep_fidelity(degraded, plus, HamiltonianSpec::ladder(2),
                                 1e-3, 20000)
                   .fidelity;
    CHECK(f <= base + 2e-3);
  }
}

TEST_CASE("classical order: delta resources reach everything") {
  auto delta = grid_delta_clock(64, 0);
  auto target = wrapped_gaussian_clock(64, 0.3, 0.08);
  auto v = classical_order(delta, target);
  REQUIRE(v.feasible);
  CHECK((v.kernel - target.density).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("classical order: uniform noise cannot be undone") {
  auto v = classical_order(uniform_circle_clock(64), grid_delta_clock(64, 0));
  CHECK_FALSE(v.feasible);
}

TEST_CASE("classical order: gaussian widening has a gaussian kernel") {
  const int n = 256;
  auto narrow = wrapped_gaussian_clock(n, 0.5, 0.05);
  auto wide = wrapped_gaussian_clock(n, 0.5, 0.10);
  auto v = classical_order(narrow, wide);
  REQUIRE(v.feasible);
  CHECK(v.residual < 1e-7);
  double sigma = std::sqrt(0.10 * 0.10 - 0.05 * 0.05);
  auto expected = wrapped_gaussian_clock(n, 0.0, sigma);
  CHECK((v.kernel - expected.density).cwiseAbs().maxCoeff() < 1e-6);
  // and the direction is irreversible
  CHECK_FALSE(classical_order(wide, narrow).feasible);
}

TEST_CASE("classical fisher information is monotone under convolution") {
  const int n = 256;
  auto narrow = wrapped_gaussian_clock(n, 0.5, 0.05);
  auto wide = wrapped_gaussian_clock(n, 0.5, 0.10);
  CHECK(classical_fisher(wide) < classical_fisher(narrow));
}
