#pragma once

#include <map>
#include <utility>

#include "tempus/clock.hpp"

namespace tempus {

// One Kraus operator of a covariant map, shifting input energy n to
// output energy n - shift. Stored in the energy eigenbases.
struct GradedKrausOp {
  long shift = 0;
  CMat op;  // d_out x d_in
};

struct GradedKraus {
  std::vector<GradedKrausOp> ops;
  HamiltonianSpec h_in, h_out;
};

ValidationReport validate_graded_kraus(const GradedKraus& gk);

// Index of the energy-shift grading: for each shift value, the list of
// (input level, output level) pairs with e_in - e_out == shift.
struct ShiftBlockIndex {
  std::vector<long> shifts;
  std::vector<std::vector<std::pair<int, int>>> pairs;  // (i_in, j_out)
  int dim_in = 0, dim_out = 0;

  static ShiftBlockIndex build(const HamiltonianSpec& h_in,
                               const HamiltonianSpec& h_out);
  int total_params() const;  // sum of block_size^2 (real Hermitian dims)
};

// Covariant Choi matrix stored as one PSD block per energy shift.
// The dense Choi index is (j_out * d_in + i_in).
struct CovariantChoi {
  ShiftBlockIndex index;
  std::vector<CMat> blocks;
  HamiltonianSpec h_in, h_out;

  CMat dense() const;
  double tp_residual() const;   // max |Tr_out J - I|
  double psd_residual() const;  // max(0, -min block eigenvalue)
};

CovariantChoi kraus_to_choi(const GradedKraus& gk);

// Extract covariant blocks from a dense Choi matrix, discarding the
// cross-shift entries (this IS the twirl). Returns the largest discarded
// magnitude through `off_block` if given.
CovariantChoi choi_blocks_from_dense(const CMat& j,
                                     const HamiltonianSpec& h_in,
                                     const HamiltonianSpec& h_out,
                                     double* off_block = nullptr);

CMat dense_choi_from_kraus_list(const std::vector<CMat>& kraus, int d_in,
                                int d_out);

CMat apply_channel(const GradedKraus& gk, const CMat& rho);
CMat apply_channel(const CovariantChoi& ch, const CMat& rho);

// Block action with inputs/outputs already in the energy eigenbases.
CMat apply_energy_frame(const CovariantChoi& ch, const CMat& rho);

// Choi matrix of second . first; shifts add, so the result is covariant.
CovariantChoi compose_channels(const CovariantChoi& second,
                               const CovariantChoi& first);

// Period-average of an arbitrary CP map, computed algebraically by zeroing
// the cross-shift Choi entries.
CovariantChoi twirl_channel(const std::vector<CMat>& kraus,
                            const HamiltonianSpec& h_in,
                            const HamiltonianSpec& h_out);

// The Fock-to-qubit family A_0 = d_0|0><0|, A_j = c_j|0><j-1| + d_j|1><j|.
// Throws (with the offending index) if |c_n|^2 + |d_{n-1}|^2 != 1.
GradedKraus ladder_kraus_form(const std::vector<Complex>& c,
                             const std::vector<Complex>& d);

// Report on the perfect-preparation constraint c_n f_{n-1} = d_n f_n for
// a given pure resource amplitude vector f. Lists the residual per index.
ValidationReport check_preparation_constraint(const std::vector<Complex>& c,
                                              const std::vector<Complex>& d,
                                              const CVec& f);

struct CovariantPOVM {
  std::vector<CMat> effects;  // density effects M(t_k), (1/N) sum = I
  int grid() const { return int(effects.size()); }
  int dim() const { return effects.empty() ? 0 : int(effects[0].rows()); }
};

ValidationReport validate_covariant_povm(const CovariantPOVM& povm,
                                         const HamiltonianSpec& h);

// M(t_k) = |e_k><e_k| with |e_t> = sum_n exp(-i 2 pi n t)|n>, for a
// nondegenerate spectrum 0..d-1.
CovariantPOVM canonical_phase_povm(int d, int n_grid = 256);

// p(t_k) = tr(rho M(t_k)); the classical clock rotates once per quantum
// period, so omega = 2 pi / clock_period(input).
ClassicalCircleClock q2c_transfer(const QuantumClock& clock,
                                  const CovariantPOVM& povm);

// rho_out = (1/N) sum_k p(t_k) evolve_periods(seed, t_k).rho
QuantumClock c2q_prepare(const ClassicalCircleClock& measure,
                         const QuantumClock& seed);

// Choi matrix of the measure-and-reprepare channel
// G(rho) = (1/N) sum_k tr(rho M_k) evolve_periods(seed, k/N).rho
CovariantChoi measure_prepare_choi(const CovariantPOVM& povm,
                                   const HamiltonianSpec& h_in,
                                   const QuantumClock& seed);

// TP-normalized random graded Kraus set (one Gaussian operator per shift).
GradedKraus random_covariant_channel(const HamiltonianSpec& h_in,
                                     const HamiltonianSpec& h_out, Rng& rng);

// Random covariant isometry V = sum_n |u_n><n| (single Kraus operator,
// fixed shift). Requires every input level to have a matching output
// energy; throws otherwise.
GradedKraus random_covariant_isometry(const HamiltonianSpec& h_in,
                                      const HamiltonianSpec& h_out,
                                      long shift, Rng& rng);

// max over sampled t of |G(alpha_t rho) - alpha~_t G(rho)|.
double covariance_residual(const CovariantChoi& ch, const CMat& rho,
                           int samples = 16);

}  // namespace tempus
