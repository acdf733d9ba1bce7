#pragma once

#include "tempus/order.hpp"

namespace tempus {

// Bipartite state invariant under the joint time translation.
struct Synchronism {
  CMat joint_rho;  // on d_A * d_B, index a * d_B + b
  HamiltonianSpec h_a, h_b;
  double stationarity_residual = 0.0;
};

Synchronism make_synchronism(const CMat& joint_rho, const HamiltonianSpec& h_a,
                             const HamiltonianSpec& h_b);

ValidationReport validate_synchronism(const Synchronism& s);

// The relative-time clock (rho, -H_A x 1 + 1 x H_B): what Bob holds once
// Alice learns the true time.
QuantumClock sync_to_clock(const Synchronism& s);

double relative_fisher(const Synchronism& s);

// Dephase across distinct total-energy eigenvalues: the period average of
// alpha_t x beta_t. Idempotent; output is stationary.
Synchronism twirl_joint(const CMat& rho, const HamiltonianSpec& h_a,
                        const HamiltonianSpec& h_b);

struct ClassicalSync {
  RMat joint;  // joint(a, b) = q((a - b) mod N), uniform marginals
  double omega = 2.0 * kPi;
};

ClassicalSync classical_sync(const ClassicalCircleClock& q);

ValidationReport validate_classical_sync(const ClassicalSync& s);

// Reduction to the clock order (the synchronism order holds iff the
// relative-time clocks are ordered).
OrderVerdict sync_order(const Synchronism& s1, const Synchronism& s2,
                        double tol = 1e-6);

}  // namespace tempus
