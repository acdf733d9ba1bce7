#include "tempus/sync.hpp"

#include <cmath>

#include "tempus/fisher.hpp"

namespace tempus {

namespace {

HamiltonianSpec relative_generator(const HamiltonianSpec& h_a,
                                   const HamiltonianSpec& h_b) {
  HamiltonianSpec h;
  const int da = h_a.dim(), db = h_b.dim();
  h.eigenvalues.resize(da * db);
  for (int a = 0; a < da; ++a)
    for (int b = 0; b < db; ++b)
      h.eigenvalues[a * db + b] = -h_a.eigenvalues[a] + h_b.eigenvalues[b];
  if (h_a.has_basis() || h_b.has_basis()) {
    CMat ba = h_a.has_basis() ? h_a.basis : CMat(CMat::Identity(da, da));
    CMat bb = h_b.has_basis() ? h_b.basis : CMat(CMat::Identity(db, db));
    h.basis = kron(ba, bb);
  }
  return h;
}

CMat total_hamiltonian(const HamiltonianSpec& h_a, const HamiltonianSpec& h_b) {
  const int da = h_a.dim(), db = h_b.dim();
  return kron(h_a.matrix(), CMat::Identity(db, db)) +
         kron(CMat::Identity(da, da), h_b.matrix());
}

}  // namespace

Synchronism make_synchronism(const CMat& joint_rho, const HamiltonianSpec& h_a,
                             const HamiltonianSpec& h_b) {
  Synchronism s;
  s.joint_rho = joint_rho;
  s.h_a = h_a;
  s.h_b = h_b;
  CMat h = total_hamiltonian(h_a, h_b);
  s.stationarity_residual =
      (joint_rho * h - h * joint_rho).cwiseAbs().maxCoeff();
  return s;
}

ValidationReport validate_synchronism(const Synchronism& s) {
  ValidationReport rep;
  rep.add("joint_hermitian", hermiticity_residual(s.joint_rho), 1e-10);
  rep.add("joint_trace_one", std::abs(s.joint_rho.trace().real() - 1.0),
          1e-10);
  rep.add("joint_psd", std::max(0.0, -min_eigenvalue(s.joint_rho)), 1e-10);
  CMat h = total_hamiltonian(s.h_a, s.h_b);
  rep.add("stationarity",
          (s.joint_rho * h - h * s.joint_rho).cwiseAbs().maxCoeff(), 1e-8);
  return rep;
}

QuantumClock sync_to_clock(const Synchronism& s) {
  auto rep = validate_synchronism(s);
  if (!rep.ok())
    throw std::invalid_argument("sync_to_clock: invalid synchronism");
  return {s.joint_rho, relative_generator(s.h_a, s.h_b)};
}

double relative_fisher(const Synchronism& s) {
  return quantum_fisher(sync_to_clock(s));
}

Synchronism twirl_joint(const CMat& rho, const HamiltonianSpec& h_a,
                        const HamiltonianSpec& h_b) {
  const int da = h_a.dim(), db = h_b.dim();
  CMat ba = h_a.has_basis() ? h_a.basis : CMat(CMat::Identity(da, da));
  CMat bb = h_b.has_basis() ? h_b.basis : CMat(CMat::Identity(db, db));
  CMat b = kron(ba, bb);
  CMat r = b.adjoint() * rho * b;
  RVec e(da * db);
  for (int a = 0; a < da; ++a)
    for (int bq = 0; bq < db; ++bq)
      e[a * db + bq] = h_a.eigenvalues[a] + h_b.eigenvalues[bq];
  for (int i = 0; i < da * db; ++i)
    for (int j = 0; j < da * db; ++j)
      if (std::abs(e[i] - e[j]) > 1e-9) r(i, j) = 0.0;
  return make_synchronism(b * r * b.adjoint(), h_a, h_b);
}

ClassicalSync classical_sync(const ClassicalCircleClock& q) {
  auto rep = validate_classical(q);
  if (!rep.ok()) throw std::invalid_argument("classical_sync: invalid density");
  const int n = q.grid();
  ClassicalSync s;
  s.omega = q.omega;
  s.joint.resize(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      s.joint(a, b) = q.density[((a - b) % n + n) % n];
  return s;
}

ValidationReport validate_classical_sync(const ClassicalSync& s) {
  ValidationReport rep;
  const int n = int(s.joint.rows());
  rep.add("joint_normalized",
          std::abs(s.joint.sum() / double(n * n) - 1.0), 1e-9);
  rep.add("joint_nonnegative", std::max(0.0, -s.joint.minCoeff()), 1e-12);
  double worst = 0.0;
  for (int a = 0; a < n; ++a)
    worst = std::max(worst, std::abs(s.joint.row(a).sum() / n - 1.0));
  for (int b = 0; b < n; ++b)
    worst = std::max(worst, std::abs(s.joint.col(b).sum() / n - 1.0));
  rep.add("marginals_uniform", worst, 1e-9);
  return rep;
}

OrderVerdict sync_order(const Synchronism& s1, const Synchronism& s2,
                        double tol) {
  return order_feasible(sync_to_clock(s1), sync_to_clock(s2), tol);
}

}  // namespace tempus
