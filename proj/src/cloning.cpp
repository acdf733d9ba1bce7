#include "tempus/cloning.hpp"

#include <cmath>
#include <limits>

#include "tempus/fisher.hpp"

namespace tempus {

namespace {

constexpr double kZeroFisher = 1e-12;

CMat to_energy(const HamiltonianSpec& h, const CMat& rho) {
  if (!h.has_basis()) return rho;
  return h.basis.adjoint() * rho * h.basis;
}

}  // namespace

HamiltonianSpec tensor_hamiltonian(const HamiltonianSpec& h1,
                                   const HamiltonianSpec& h2) {
  HamiltonianSpec h;
  const int d1 = h1.dim(), d2 = h2.dim();
  h.eigenvalues.resize(d1 * d2);
  for (int i = 0; i < d1; ++i)
    for (int j = 0; j < d2; ++j)
      h.eigenvalues[i * d2 + j] = h1.eigenvalues[i] + h2.eigenvalues[j];
  if (h1.has_basis() || h2.has_basis()) {
    CMat b1 = h1.has_basis() ? h1.basis : CMat(CMat::Identity(d1, d1));
    CMat b2 = h2.has_basis() ? h2.basis : CMat(CMat::Identity(d2, d2));
    h.basis = kron(b1, b2);
  }
  return h;
}

BroadcastInstance make_broadcast_instance(const QuantumClock& resource,
                                          const HamiltonianSpec& h1,
                                          const HamiltonianSpec& h2,
                                          const CovariantChoi& joint_channel) {
  const int d1 = h1.dim(), d2 = h2.dim();
  if (joint_channel.index.dim_in != resource.dim() ||
      joint_channel.index.dim_out != d1 * d2)
    throw std::invalid_argument("make_broadcast_instance: dimension mismatch");
  BroadcastInstance inst;
  inst.resource = resource;
  inst.output_h1 = h1;
  inst.output_h2 = h2;
  inst.joint_channel = joint_channel;
  inst.joint_state = apply_channel(joint_channel, resource.rho);
  HamiltonianSpec h12 = tensor_hamiltonian(h1, h2);
  CMat sigma_e = to_energy(h12, inst.joint_state);
  CMat rho1 = clean_density(partial_trace_second(sigma_e, d1, d2), 1e-8);
  CMat rho2 = clean_density(partial_trace_first(sigma_e, d1, d2), 1e-8);
  HamiltonianSpec h1e = HamiltonianSpec::diag(
      std::vector<double>(h1.eigenvalues.data(), h1.eigenvalues.data() + d1));
  HamiltonianSpec h2e = HamiltonianSpec::diag(
      std::vector<double>(h2.eigenvalues.data(), h2.eigenvalues.data() + d2));
  inst.f1 = quantum_fisher({rho1, h1e});
  inst.f2 = quantum_fisher({rho2, h2e});
  CVec e_tot = h12.eigenvalues.cast<Complex>();
  double e1 = 0.0, e2 = 0.0;
  for (int k = 0; k < d1 * d2; ++k) {
    double p = sigma_e(k, k).real();
    e1 += p * e_tot[k].real();
    e2 += p * e_tot[k].real() * e_tot[k].real();
  }
  inst.e_mean = e1;
  inst.e2_mean = e2;
  return inst;
}

BoundReport clone_bound_check(const BroadcastInstance& instance,
                              double resource_fisher) {
  if (instance.output_h1.eigenvalues.minCoeff() < -1e-9 ||
      instance.output_h2.eigenvalues.minCoeff() < -1e-9)
    throw std::invalid_argument(
        "clone_bound_check: negative Hamiltonian eigenvalues");
  BoundReport rep;
  rep.lhs_infinite =
      instance.f1 <= kZeroFisher || instance.f2 <= kZeroFisher;
  rep.rhs_infinite =
      resource_fisher <= kZeroFisher || instance.e2_mean <= kZeroFisher;
  if (!rep.lhs_infinite) rep.lhs = 1.0 / instance.f1 + 1.0 / instance.f2;
  if (!rep.rhs_infinite)
    rep.rhs = 2.0 / resource_fisher + 2.0 / instance.e2_mean;
  if (rep.lhs_infinite) {
    rep.pass = true;
    rep.slack = std::numeric_limits<double>::infinity();
  } else if (rep.rhs_infinite) {
    rep.pass = false;  // finite information out of an infinite requirement
    rep.slack = -std::numeric_limits<double>::infinity();
  } else {
    rep.slack = rep.lhs - rep.rhs;
    rep.pass = rep.slack >= -1e-8;
  }

  double purity = (instance.joint_state * instance.joint_state).trace().real();
  if (purity > 1.0 - 1e-8) {
    // pure joint output: <E^2> = <E>^2 + F(joint) <= <E>^2 + F, which
    // tightens the sum bound to 2/F + 2/(F + <E>^2)
    rep.has_pure_bound = true;
    if (rep.lhs_infinite) {
      rep.pure_lhs = std::numeric_limits<double>::infinity();
      rep.pure_pass = true;
    } else if (resource_fisher <= kZeroFisher) {
      rep.pure_lhs = rep.lhs;
      rep.pure_rhs = std::numeric_limits<double>::infinity();
      rep.pure_pass = false;
    } else {
      rep.pure_lhs = rep.lhs;
      rep.pure_rhs =
          2.0 / resource_fisher +
          2.0 / (resource_fisher + instance.e_mean * instance.e_mean);
      rep.pure_slack = rep.pure_lhs - rep.pure_rhs;
      rep.pure_pass = rep.pure_slack >= -1e-8;
    }
  }
  return rep;
}

BroadcastInstance broadcast_search(const QuantumClock& resource,
                                   const HamiltonianSpec& h1,
                                   const HamiltonianSpec& h2, Rng& rng,
                                   int restarts) {
  const int d1 = h1.dim(), d2 = h2.dim();
  if (d1 * d2 > 16)
    throw std::invalid_argument("broadcast_search: product dimension > 16");
  HamiltonianSpec h12 = tensor_hamiltonian(h1, h2);
  CMat rho = to_energy(resource.hamiltonian, resource.rho);
  const double f_res = quantum_fisher(resource);

  auto prob = make_order_problem(resource.hamiltonian, h12, {});
  const int n = prob.index.total_params();
  CovariantChoi probe;
  probe.index = prob.index;

  CMat h1m = h1.eigenvalues.cast<Complex>().asDiagonal();
  CMat h2m = h2.eigenvalues.cast<Complex>().asDiagonal();
  auto marginal_pair = [&](const RVec& x) {
    probe.blocks = unpack_blocks(prob.index, x);
    CMat sigma = apply_energy_frame(probe, rho);
    return std::pair<CMat, CMat>(partial_trace_second(sigma, d1, d2),
                                 partial_trace_first(sigma, d1, d2));
  };
  auto objective = [&](const RVec& x) {
    auto [m1, m2] = marginal_pair(x);
    HamiltonianSpec h1e, h2e;
    h1e.eigenvalues = h1.eigenvalues;
    h2e.eigenvalues = h2.eigenvalues;
    double f1 = quantum_fisher({clean_density(m1, 1e-7), h1e});
    double f2 = quantum_fisher({clean_density(m2, 1e-7), h2e});
    return std::min(f1, f2);
  };
  // coordinates of x -> 2 tr(sigma_dot L) - tr(sigma L^2), the variational
  // lower form of the marginal Fisher information at the frozen observable
  auto fisher_row = [&](const CMat& l, const CMat& hm, bool first) {
    RVec c(n);
    CMat l2 = l * l;
    for (int k = 0; k < n; ++k) {
      RVec e = RVec::Zero(n);
      e[k] = 1.0;
      probe.blocks = unpack_blocks(prob.index, e);
      CMat sigma = apply_energy_frame(probe, rho);
      CMat m = first ? partial_trace_second(sigma, d1, d2)
                     : partial_trace_first(sigma, d1, d2);
      CMat md = kI * (m * hm - hm * m);
      c[k] = 2.0 * (md * l).trace().real() - (m * l2).trace().real();
    }
    return c;
  };

  RVec best_x;
  double best_obj = -1.0;
  for (int r = 0; r < restarts; ++r) {
    GradedKraus gk = random_covariant_channel(resource.hamiltonian, h12, rng);
    RVec x = pack_blocks(prob.index, kraus_to_choi(gk).blocks);
    double obj = objective(x);
    for (int round = 0; round < 5; ++round) {
      auto [m1, m2] = marginal_pair(x);
      CMat m1c = clean_density(m1, 1e-7), m2c = clean_density(m2, 1e-7);
      CMat l1 = sld(m1c, hermitize(kI * (m1c * h1m - h1m * m1c)));
      CMat l2 = sld(m2c, hermitize(kI * (m2c * h2m - h2m * m2c)));
      RVec c1 = fisher_row(l1, h1m, true);
      RVec c2 = fisher_row(l2, h2m, false);
      prob.halfspaces = {{c1, 0.0}, {c2, 0.0}};
      DykstraOptions opt;
      opt.tol = 1e-7;
      opt.max_iter = 20000;
      double lo = obj, hi = f_res;
      for (int bis = 0; bis < 10 && hi - lo > 1e-4 * (1.0 + hi); ++bis) {
        double t = 0.5 * (lo + hi);
        prob.halfspaces[0].offset = t;
        prob.halfspaces[1].offset = t;
        auto out = dykstra_feasible(prob, opt);
        if (out.feasible) {
          lo = t;
          x = out.x;
        } else {
          hi = t;
        }
      }
      double new_obj = objective(x);
      if (new_obj <= obj + 1e-9) {
        obj = std::max(obj, new_obj);
        break;
      }
      obj = new_obj;
    }
    if (obj > best_obj) {
      best_obj = obj;
      best_x = x;
    }
  }

  CovariantChoi witness;
  witness.index = prob.index;
  witness.h_in = resource.hamiltonian;
  witness.h_out = h12;
  witness.blocks = unpack_blocks(prob.index, best_x);
  for (auto& b : witness.blocks) b = project_psd(b);
  return make_broadcast_instance(resource, h1, h2, witness);
}

CommutatorReport exact_broadcast_feasible(const QuantumClock& clock,
                                          const std::vector<double>& times) {
  if (times.size() < 2)
    throw std::invalid_argument("exact_broadcast_feasible: need >= 2 times");
  CommutatorReport rep;
  std::vector<CMat> states;
  for (double t : times) states.push_back(evolve(clock, t).rho);
  for (size_t i = 0; i < states.size(); ++i)
    for (size_t j = i + 1; j < states.size(); ++j) {
      double c =
          (states[i] * states[j] - states[j] * states[i]).cwiseAbs().maxCoeff();
      rep.max_commutator = std::max(rep.max_commutator, c);
      rep.pairs.add(
          "commutator_" + std::to_string(i) + "_" + std::to_string(j), c,
          1e-9);
    }
  rep.broadcastable = rep.max_commutator < 1e-9;
  return rep;
}

}  // namespace tempus
