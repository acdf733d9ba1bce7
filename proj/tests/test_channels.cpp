#include <doctest.h>

#include "tempus/channels.hpp"
#include "tempus/fisher.hpp"

using namespace tempus;

namespace {

// alternating ladder-to-qubit channel: A_1 = |0><0| + |1><1|,
// A_3 = |0><2| + |1><3| (the odd-index unit-coefficient solution)
GradedKraus alternating_channel() {
  std::vector<Complex> c = {0.0, 1.0, 0.0, 1.0};
  std::vector<Complex> d = {0.0, 1.0, 0.0, 1.0};
  return ladder_kraus_form(c, d);
}

}  // namespace

TEST_CASE("shift grading covers every level pair exactly once") {
  auto idx = ShiftBlockIndex::build(HamiltonianSpec::ladder(3),
                                    HamiltonianSpec::ladder(2));
  int total = 0;
  for (const auto& p : idx.pairs) total += int(p.size());
  CHECK(total == 6);
  CHECK(idx.shifts.size() == 4);  // -1, 0, 1, 2
}

TEST_CASE("kraus, choi and direct application agree") {
  Rng rng(13);
  auto gk = random_covariant_channel(HamiltonianSpec::ladder(3),
                                     HamiltonianSpec::ladder(2), rng);
  CHECK(validate_graded_kraus(gk).ok());
  auto choi = kraus_to_choi(gk);
  CHECK(choi.tp_residual() < 1e-10);
  CHECK(choi.psd_residual() < 1e-12);
  for (int trial = 0; trial < 5; ++trial) {
    CMat rho = random_density(3, rng);
    CMat via_kraus = apply_channel(gk, rho);
    CMat via_choi = apply_channel(choi, rho);
    CHECK((via_kraus - via_choi).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(std::abs(via_choi.trace().real() - 1.0) < 1e-10);
    CHECK(min_eigenvalue(via_choi) > -1e-10);
  }
}

TEST_CASE("covariance holds by construction") {
  Rng rng(29);
  auto gk = random_covariant_channel(HamiltonianSpec::ladder(4),
                                     HamiltonianSpec::ladder(3), rng);
  auto choi = kraus_to_choi(gk);
  CHECK(covariance_residual(choi, random_density(4, rng)) < 1e-10);
}

TEST_CASE("alternating ladder channel maps the 4-level clock to |+>") {
  auto gk = alternating_channel();
  CHECK(validate_graded_kraus(gk).ok());
  CVec psi(4);
  psi << 0.5, 0.5, 0.5, 0.5;
  CMat out = apply_channel(gk, psi * psi.adjoint());
  CMat plus(2, 2);
  plus << 0.5, 0.5, 0.5, 0.5;
  CHECK((out - plus).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("normalization constraint is enforced with the offending index") {
  std::vector<Complex> c = {0.0, 0.7, 0.0, 1.0};
  std::vector<Complex> d = {0.0, 1.0, 0.0, 1.0};
  CHECK_THROWS_WITH_AS(ladder_kraus_form(c, d),
                       doctest::Contains("n = 1"), std::invalid_argument);
}

TEST_CASE("perfect-preparation constraint on amplitude vectors") {
  std::vector<Complex> c = {0.0, 1.0, 0.0, 1.0};
  std::vector<Complex> d = {0.0, 1.0, 0.0, 1.0};
  CVec f4(4);
  f4 << 0.5, 0.5, 0.5, 0.5;
  CHECK(check_preparation_constraint(c, d, f4).ok());
  CVec skew(4);
  skew << 0.8, 0.4, 0.4, 0.2236;
  CHECK_FALSE(check_preparation_constraint(c, d, skew).ok());
}

TEST_CASE("twirl is idempotent and fixes covariant channels") {
  Rng rng(31);
  auto gk = random_covariant_channel(HamiltonianSpec::ladder(3),
                                     HamiltonianSpec::ladder(3), rng);
  std::vector<CMat> ops;
  for (const auto& k : gk.ops) ops.push_back(k.op);
  auto tw = twirl_channel(ops, gk.h_in, gk.h_out);
  CHECK((tw.dense() - kraus_to_choi(gk).dense()).cwiseAbs().maxCoeff() <
        1e-12);

  // a non-covariant unitary gets projected onto the covariant set
  CMat had(2, 2);
  had << 1.0, 1.0, 1.0, -1.0;
  had /= std::sqrt(2.0);
  auto tw2 = twirl_channel({had}, HamiltonianSpec::ladder(2),
                           HamiltonianSpec::ladder(2));
  double off = 0.0;
  auto again = choi_blocks_from_dense(tw2.dense(), tw2.h_in, tw2.h_out, &off);
  CHECK(off < 1e-14);  // idempotent
  CHECK((again.dense() - tw2.dense()).cwiseAbs().maxCoeff() < 1e-14);
  CHECK(tw2.tp_residual() < 1e-12);
  CHECK(covariance_residual(tw2, random_density(2, rng)) < 1e-12);
}

TEST_CASE("canonical phase povm validates and is covariant") {
  auto povm = canonical_phase_povm(3, 64);
  CHECK(validate_covariant_povm(povm, HamiltonianSpec::ladder(3)).ok());
  CHECK_THROWS_AS(canonical_phase_povm(5, 4), std::invalid_argument);
}

TEST_CASE("measurement then preparation round trip") {
  CVec plus(2);
  plus << 1.0, 1.0;
  QuantumClock seed = pure_clock(plus, HamiltonianSpec::ladder(2));
  auto delta = grid_delta_clock(64, 16);  // quarter turn
  delta.omega = 1.0;  // match the seed clock's recurrence rate 2 pi / period
  QuantumClock prepared = c2q_prepare(delta, seed);
  QuantumClock expected = evolve_periods(seed, 0.25);
  CHECK((prepared.rho - expected.rho).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("measure-and-reprepare channel matches its explicit formula") {
  CVec plus(2);
  plus << 1.0, 1.0;
  QuantumClock seed = pure_clock(plus, HamiltonianSpec::ladder(2));
  auto povm = canonical_phase_povm(2, 32);
  auto choi = measure_prepare_choi(povm, HamiltonianSpec::ladder(2), seed);
  CHECK(choi.tp_residual() < 1e-10);
  Rng rng(41);
  CMat rho = random_density(2, rng);
  CMat expected = CMat::Zero(2, 2);
  for (int k = 0; k < 32; ++k) {
    double p = (rho * povm.effects[size_t(k)]).trace().real();
    expected += p / 32.0 * evolve_periods(seed, k / 32.0).rho;
  }
  CHECK((apply_channel(choi, rho) - expected).cwiseAbs().maxCoeff() < 1e-10);
  CHECK(covariance_residual(choi, rho) < 1e-8);
}

TEST_CASE("covariant isometries are isometric and graded") {
  Rng rng(43);
  auto gk = random_covariant_isometry(HamiltonianSpec::ladder(2),
                                      HamiltonianSpec::diag({0, 1, 1, 2}), 0,
                                      rng);
  CHECK(validate_graded_kraus(gk).ok());
  const CMat& v = gk.ops[0].op;
  CHECK((v.adjoint() * v - CMat::Identity(2, 2)).cwiseAbs().maxCoeff() <
        1e-12);
  CMat rho = random_density(2, rng);
  CMat out = apply_channel(gk, rho);
  CHECK((out * out).trace().real() ==
        doctest::Approx((rho * rho).trace().real()).epsilon(1e-10));
  CHECK_THROWS_AS(
      random_covariant_isometry(HamiltonianSpec::ladder(3),
                                HamiltonianSpec::ladder(2), 5, rng),
      std::invalid_argument);
}

TEST_CASE("channel composition matches sequential application") {
  Rng rng(47);
  auto g1 = kraus_to_choi(random_covariant_channel(
      HamiltonianSpec::ladder(4), HamiltonianSpec::ladder(3), rng));
  auto g2 = kraus_to_choi(random_covariant_channel(
      HamiltonianSpec::ladder(3), HamiltonianSpec::ladder(2), rng));
  auto g21 = compose_channels(g2, g1);
  CHECK(g21.tp_residual() < 1e-10);
  CHECK(g21.psd_residual() < 1e-10);
  CMat rho = random_density(4, rng);
  CHECK((apply_channel(g21, rho) - apply_channel(g2, apply_channel(g1, rho)))
            .cwiseAbs()
            .maxCoeff() < 1e-11);
}

TEST_CASE("quantum to classical and back composes covariantly") {
  CVec psi(3);
  psi << 1.0, 1.0, 1.0;
  QuantumClock c = pure_clock(psi, HamiltonianSpec::ladder(3));
  auto povm = canonical_phase_povm(3, 128);
  auto cl = q2c_transfer(c, povm);
  CHECK(validate_classical(cl).ok());
  CHECK(cl.omega == doctest::Approx(1.0));
  CHECK(classical_fisher(cl) <= quantum_fisher(c) + 1e-6);
}
