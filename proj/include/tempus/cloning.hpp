#pragma once

#include "tempus/order.hpp"

namespace tempus {

// Product system carrying the two copies; eigenvalues add.
HamiltonianSpec tensor_hamiltonian(const HamiltonianSpec& h1,
                                   const HamiltonianSpec& h2);

struct BroadcastInstance {
  QuantumClock resource;
  HamiltonianSpec output_h1, output_h2;
  CovariantChoi joint_channel;
  CMat joint_state;
  double f1 = 0.0, f2 = 0.0;  // marginal Fisher information
  double e2_mean = 0.0;       // <(H1 x 1 + 1 x H2)^2> of the joint output
  double e_mean = 0.0;
};

BroadcastInstance make_broadcast_instance(const QuantumClock& resource,
                                          const HamiltonianSpec& h1,
                                          const HamiltonianSpec& h2,
                                          const CovariantChoi& joint_channel);

struct BoundReport {
  double lhs = 0.0, rhs = 0.0, slack = 0.0;
  bool lhs_infinite = false, rhs_infinite = false;
  bool pass = false;
  // filled for (nearly) pure joint outputs, where <E^2> = <E>^2 + F(joint)
  // tightens the bound to 1/F1 + 1/F2 >= 2/F + 2/(F + <E>^2)
  bool has_pure_bound = false;
  double pure_lhs = 0.0, pure_rhs = 0.0, pure_slack = 0.0;
  bool pure_pass = true;
};

// 1/F1 + 1/F2 >= 2/F + 2/<E^2>; slack tolerance -1e-8.
BoundReport clone_bound_check(const BroadcastInstance& instance,
                              double resource_fisher);

// Heuristic maximization of min(F1, F2) over covariant broadcast channels:
// alternating linearization (fix marginal observables, re-optimize the
// channel with Fisher halfspaces by bisection). Returns the best instance
// found -- a lower bound on the optimum.
BroadcastInstance broadcast_search(const QuantumClock& resource,
                                   const HamiltonianSpec& h1,
                                   const HamiltonianSpec& h2, Rng& rng,
                                   int restarts = 50);

struct CommutatorReport {
  bool broadcastable = false;
  double max_commutator = 0.0;
  ValidationReport pairs;
};

// Exact broadcast of the evolved family exists iff all rho_t commute.
CommutatorReport exact_broadcast_feasible(const QuantumClock& clock,
                                          const std::vector<double>& times);

}  // namespace tempus
