#pragma once

#include "tempus/channels.hpp"

namespace tempus {

// Real coordinates for Hermitian matrices: d diagonal entries, then for
// each p < q the pair (sqrt(2) Re, sqrt(2) Im). Euclidean length equals
// the Frobenius norm.
int herm_param_count(int d);
RVec pack_hermitian(const CMat& m);
CMat unpack_hermitian(const RVec& x, int d);
RVec pack_blocks(const ShiftBlockIndex& index, const std::vector<CMat>& blocks);
std::vector<CMat> unpack_blocks(const ShiftBlockIndex& index, const RVec& x);

struct Halfspace {
  RVec normal;
  double offset = 0.0;  // requires <normal, x> >= offset
};

// Intersection of the per-block PSD cone, the affine set a x = b, and the
// listed halfspaces, in the packed block coordinates.
struct FeasibilityProblem {
  ShiftBlockIndex index;
  RMat a;
  RVec b;
  std::vector<Halfspace> halfspaces;
};

// Affine rows: trace preservation, plus apply(G, rho_i) = sigma_i for each
// listed pair (states given in the energy eigenbases).
FeasibilityProblem make_order_problem(
    const HamiltonianSpec& h_in, const HamiltonianSpec& h_out,
    const std::vector<std::pair<CMat, CMat>>& state_pairs);

// Coordinates of x -> <phi|G(rho)|phi> (phi, rho in the energy bases).
RVec linear_fidelity_functional(const ShiftBlockIndex& index, const CMat& rho,
                                const CVec& phi);

struct DykstraOptions {
  double tol = 1e-6;
  int max_iter = 50000;
  int plateau_window = 500;   // iterations without improvement
  double plateau_eps = 1e-12;
};

struct DykstraOutcome {
  bool feasible = false;
  double residual = 0.0;
  RVec x;
  int iterations = 0;
};

DykstraOutcome dykstra_feasible(const FeasibilityProblem& prob,
                                const DykstraOptions& opt = {});

struct OrderVerdict {
  bool feasible = false;
  double fidelity_achieved = 0.0;  // squared Uhlmann fidelity of G(rho)
  CovariantChoi witness;
  bool has_witness = false;
  int iterations = 0;
  double residual = 0.0;
  ValidationReport residuals;
};

// Does a covariant CP-TP map send resource to target?
OrderVerdict order_feasible(const QuantumClock& resource,
                            const QuantumClock& target, double tol = 1e-6,
                            int max_iter = 50000);

struct PrepResult {
  double fidelity = 0.0;  // largest feasible <phi|G(rho)|phi>
  CovariantChoi witness;
  int iterations = 0;
};

// Bisection over the overlap level, 20 rounds on [0, 1].
PrepResult max_prep_fidelity(const QuantumClock& resource,
                             const CVec& target_pure,
                             const HamiltonianSpec& h_out, double tol = 1e-4,
                             int max_iter = 50000);

struct ClassicalOrderVerdict {
  bool feasible = false;
  RVec kernel;  // witness density nu with mu * nu = mu_tilde
  double residual = 0.0;
  ValidationReport residuals;
};

// Circle deconvolution: nu_hat_k = N mu_tilde_hat_k / mu_hat_k on modes
// carried by mu, free modes zeroed, then alternating nonnegativity repair.
ClassicalOrderVerdict classical_order(const ClassicalCircleClock& mu,
                                      const ClassicalCircleClock& mu_tilde,
                                      double tol = 1e-7);

}  // namespace tempus
