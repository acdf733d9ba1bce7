#include "tempus/order.hpp"

#include <cmath>

#include "tempus/fftutil.hpp"
#include "tempus/fisher.hpp"

namespace tempus {

namespace {

CMat to_energy(const HamiltonianSpec& h, const CMat& rho) {
  if (!h.has_basis()) return rho;
  return h.basis.adjoint() * rho * h.basis;
}

CVec vec_to_energy(const HamiltonianSpec& h, const CVec& v) {
  if (!h.has_basis()) return v;
  return h.basis.adjoint() * v;
}

}  // namespace

int herm_param_count(int d) { return d * d; }

RVec pack_hermitian(const CMat& m) {
  const int d = int(m.rows());
  RVec x(d * d);
  int k = 0;
  for (int p = 0; p < d; ++p) x[k++] = m(p, p).real();
  const double s = std::sqrt(2.0);
  for (int p = 0; p < d; ++p)
    for (int q = p + 1; q < d; ++q) {
      x[k++] = s * m(p, q).real();
      x[k++] = s * m(p, q).imag();
    }
  return x;
}

CMat unpack_hermitian(const RVec& x, int d) {
  CMat m(d, d);
  int k = 0;
  for (int p = 0; p < d; ++p) m(p, p) = x[k++];
  const double s = 1.0 / std::sqrt(2.0);
  for (int p = 0; p < d; ++p)
    for (int q = p + 1; q < d; ++q) {
      Complex v(s * x[k], s * x[k + 1]);
      k += 2;
      m(p, q) = v;
      m(q, p) = std::conj(v);
    }
  return m;
}

RVec pack_blocks(const ShiftBlockIndex& index,
                 const std::vector<CMat>& blocks) {
  RVec x(index.total_params());
  int off = 0;
  for (const auto& b : blocks) {
    const int d = int(b.rows());
    x.segment(off, d * d) = pack_hermitian(b);
    off += d * d;
  }
  return x;
}

std::vector<CMat> unpack_blocks(const ShiftBlockIndex& index, const RVec& x) {
  std::vector<CMat> blocks;
  int off = 0;
  for (const auto& pr : index.pairs) {
    const int d = int(pr.size());
    blocks.push_back(unpack_hermitian(x.segment(off, d * d), d));
    off += d * d;
  }
  return blocks;
}

FeasibilityProblem make_order_problem(
    const HamiltonianSpec& h_in, const HamiltonianSpec& h_out,
    const std::vector<std::pair<CMat, CMat>>& state_pairs) {
  FeasibilityProblem prob;
  prob.index = ShiftBlockIndex::build(h_in, h_out);
  const int n = prob.index.total_params();
  const int din = prob.index.dim_in, dout = prob.index.dim_out;
  const int m = din * din + int(state_pairs.size()) * dout * dout;
  prob.a.resize(m, n);
  prob.b.resize(m);
  CovariantChoi probe;
  probe.index = prob.index;
  for (int k = 0; k < n; ++k) {
    RVec e = RVec::Zero(n);
    e[k] = 1.0;
    probe.blocks = unpack_blocks(prob.index, e);
    CMat tp = CMat::Zero(din, din);
    for (size_t b = 0; b < probe.blocks.size(); ++b) {
      const auto& pr = prob.index.pairs[b];
      for (size_t p = 0; p < pr.size(); ++p)
        for (size_t q = 0; q < pr.size(); ++q)
          if (pr[p].second == pr[q].second)
            tp(pr[p].first, pr[q].first) += probe.blocks[b](long(p), long(q));
    }
    prob.a.block(0, k, din * din, 1) = pack_hermitian(tp);
    int row = din * din;
    for (const auto& [rho, sigma] : state_pairs) {
      (void)sigma;
      prob.a.block(row, k, dout * dout, 1) =
          pack_hermitian(apply_energy_frame(probe, rho));
      row += dout * dout;
    }
  }
  prob.b.segment(0, din * din) = pack_hermitian(CMat::Identity(din, din));
  int row = din * din;
  for (const auto& [rho, sigma] : state_pairs) {
    (void)rho;
    prob.b.segment(row, dout * dout) = pack_hermitian(sigma);
    row += dout * dout;
  }
  return prob;
}

RVec linear_fidelity_functional(const ShiftBlockIndex& index, const CMat& rho,
                                const CVec& phi) {
  const int n = index.total_params();
  RVec c(n);
  CovariantChoi probe;
  probe.index = index;
  for (int k = 0; k < n; ++k) {
    RVec e = RVec::Zero(n);
    e[k] = 1.0;
    probe.blocks = unpack_blocks(index, e);
    c[k] = (phi.adjoint() * apply_energy_frame(probe, rho) * phi)(0, 0).real();
  }
  return c;
}

namespace {

// Local refinement on PSD factors B = F F^dagger: Levenberg-Marquardt on
// the affine rows plus hinge rows for the halfspaces. Quadratic near a
// solution, where plain alternating projections crawl along tangential
// intersections.
RVec polish_point(const FeasibilityProblem& prob, const RVec& x0) {
  std::vector<int> sizes;
  int nv = 0;
  for (const auto& pr : prob.index.pairs) {
    sizes.push_back(int(pr.size()));
    nv += 2 * int(pr.size() * pr.size());
  }
  auto blocks0 = unpack_blocks(prob.index, x0);
  RVec vars(nv);
  int off = 0;
  for (size_t b = 0; b < blocks0.size(); ++b) {
    Eigen::SelfAdjointEigenSolver<CMat> es(hermitize(blocks0[b]));
    CMat f = es.eigenvectors() *
             es.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal();
    const int d = sizes[b];
    for (int j = 0; j < d; ++j)
      for (int i = 0; i < d; ++i) {
        vars[off] = f(i, j).real();
        vars[off + 1] = f(i, j).imag();
        off += 2;
      }
  }
  auto x_of = [&](const RVec& v) -> RVec {
    std::vector<CMat> blocks;
    int o = 0;
    for (int d : sizes) {
      CMat f(d, d);
      for (int j = 0; j < d; ++j)
        for (int i = 0; i < d; ++i) {
          f(i, j) = Complex(v[o], v[o + 1]);
          o += 2;
        }
      blocks.push_back(f * f.adjoint());
    }
    return pack_blocks(prob.index, blocks);
  };
  const int mh = int(prob.halfspaces.size());
  auto r_of = [&](const RVec& v) -> RVec {
    RVec x = x_of(v);
    RVec r(prob.b.size() + mh);
    r.head(prob.b.size()) = prob.a * x - prob.b;
    for (int h = 0; h < mh; ++h)
      r[prob.b.size() + h] = std::max(
          0.0, prob.halfspaces[size_t(h)].offset -
                   prob.halfspaces[size_t(h)].normal.dot(x));
    return r;
  };

  // d(F F^dagger) = E F^dagger + F E^dagger for an elementary step E
  auto jac_of = [&](const RVec& v, const RVec& r) -> RMat {
    RVec x = x_of(v);
    RMat dx(x.size(), nv);
    std::vector<CMat> fs;
    {
      int o = 0;
      for (int d : sizes) {
        CMat f(d, d);
        for (int j = 0; j < d; ++j)
          for (int i = 0; i < d; ++i) {
            f(i, j) = Complex(v[o], v[o + 1]);
            o += 2;
          }
        fs.push_back(std::move(f));
      }
    }
    int col = 0, xoff = 0;
    for (size_t b = 0; b < fs.size(); ++b) {
      const int d = sizes[b];
      for (int j = 0; j < d; ++j)
        for (int i = 0; i < d; ++i)
          for (int part = 0; part < 2; ++part) {
            CMat e = CMat::Zero(d, d);
            e(i, j) = (part == 0) ? Complex(1.0, 0.0) : Complex(0.0, 1.0);
            CMat db = e * fs[b].adjoint() + fs[b] * e.adjoint();
            RVec dcol = RVec::Zero(x.size());
            dcol.segment(xoff, d * d) = pack_hermitian(db);
            dx.col(col++) = dcol;
          }
      xoff += d * d;
    }
    RMat jac(r.size(), nv);
    jac.topRows(prob.b.size()) = prob.a * dx;
    for (int h = 0; h < mh; ++h) {
      RVec row = RVec::Zero(nv);
      if (r[prob.b.size() + h] > 0.0)
        row = -(dx.transpose() * prob.halfspaces[size_t(h)].normal);
      jac.row(prob.b.size() + h) = row.transpose();
    }
    return jac;
  };

  double lam = 1e-4;
  RVec r = r_of(vars);
  for (int it = 0; it < 120; ++it) {
    if (r.cwiseAbs().maxCoeff() < 1e-13) break;
    RMat jac = jac_of(vars, r);
    RMat jtj = jac.transpose() * jac;
    RVec jtr = jac.transpose() * r;
    bool accepted = false;
    for (int tries = 0; tries < 10; ++tries) {
      RMat m = jtj;
      m.diagonal().array() += lam;
      RVec step = m.ldlt().solve(-jtr);
      RVec cand = vars + step;
      RVec rc = r_of(cand);
      if (rc.squaredNorm() < r.squaredNorm()) {
        vars = cand;
        r = rc;
        lam = std::max(1e-12, lam * 0.3);
        accepted = true;
        break;
      }
      lam *= 10.0;
    }
    if (!accepted) break;
  }
  return x_of(vars);
}

}  // namespace

DykstraOutcome dykstra_feasible(const FeasibilityProblem& prob,
                                const DykstraOptions& opt) {
  const int n = int(prob.a.cols());
  Eigen::CompleteOrthogonalDecomposition<RMat> cod(prob.a);
  auto proj_affine = [&](const RVec& x) -> RVec {
    return x - cod.solve((prob.a * x - prob.b).eval());
  };
  auto proj_psd = [&](const RVec& x) -> RVec {
    auto blocks = unpack_blocks(prob.index, x);
    for (auto& b : blocks) b = project_psd(b);
    return pack_blocks(prob.index, blocks);
  };
  auto residual = [&](const RVec& x) -> double {
    double r = (prob.a * x - prob.b).cwiseAbs().maxCoeff();
    auto blocks = unpack_blocks(prob.index, x);
    for (const auto& b : blocks) r = std::max(r, -min_eigenvalue(b));
    for (const auto& h : prob.halfspaces)
      r = std::max(r, h.offset - h.normal.dot(x));
    return std::max(r, 0.0);
  };

  const int n_sets = 2 + int(prob.halfspaces.size());
  std::vector<RVec> corr(size_t(n_sets), RVec::Zero(n));
  RVec x = proj_affine(RVec::Zero(n));
  double best = residual(x);
  int best_iter = 0;
  int it = 0;
  const int polish_every = 1000;
  for (; it < opt.max_iter; ++it) {
    if (it % polish_every == polish_every - 1) {
      RVec p = polish_point(prob, x);
      double rp = residual(p);
      if (rp < opt.tol) return {true, rp, p, it + 1};
    }
    for (int s = 0; s < n_sets; ++s) {
      RVec y = x + corr[size_t(s)];
      RVec px;
      if (s == 0) {
        px = proj_psd(y);
      } else if (s == 1) {
        px = proj_affine(y);
      } else {
        const auto& h = prob.halfspaces[size_t(s - 2)];
        double v = h.normal.dot(y) - h.offset;
        px = (v >= 0.0)
                 ? y
                 : RVec(y - (v / h.normal.squaredNorm()) * h.normal);
      }
      corr[size_t(s)] = y - px;
      x = std::move(px);
    }
    double r = residual(x);
    if (r < opt.tol) return {true, r, x, it + 1};
    if (r < best - opt.plateau_eps) {
      best = r;
      best_iter = it;
    }
    if (it - best_iter >= opt.plateau_window) break;
  }
  RVec p = polish_point(prob, x);
  double rp = residual(p);
  if (rp < opt.tol) return {true, rp, p, it};
  if (rp < residual(x)) return {false, rp, p, it};
  return {false, residual(x), x, it};
}

namespace {

CovariantChoi witness_from_point(const ShiftBlockIndex& index, const RVec& x,
                                 const HamiltonianSpec& h_in,
                                 const HamiltonianSpec& h_out) {
  CovariantChoi ch;
  ch.index = index;
  ch.h_in = h_in;
  ch.h_out = h_out;
  ch.blocks = unpack_blocks(index, x);
  for (auto& b : ch.blocks) b = project_psd(b);
  return ch;
}

}  // namespace

OrderVerdict order_feasible(const QuantumClock& resource,
                            const QuantumClock& target, double tol,
                            int max_iter) {
  if (resource.dim() == 0 || target.dim() == 0)
    throw std::invalid_argument("order_feasible: empty clock");
  CMat rho = to_energy(resource.hamiltonian, resource.rho);
  CMat sigma = to_energy(target.hamiltonian, target.rho);
  auto prob = make_order_problem(resource.hamiltonian, target.hamiltonian,
                                 {{rho, sigma}});
  DykstraOptions opt;
  opt.tol = tol;
  opt.max_iter = max_iter;
  auto out = dykstra_feasible(prob, opt);

  OrderVerdict v;
  v.feasible = out.feasible;
  v.iterations = out.iterations;
  v.residual = out.residual;
  v.witness = witness_from_point(prob.index, out.x, resource.hamiltonian,
                                 target.hamiltonian);
  v.has_witness = true;
  CMat mapped = apply_energy_frame(v.witness, rho);
  double uf = fidelity(clean_density(mapped, 1e-8), clean_density(sigma, 1e-8));
  v.fidelity_achieved = uf * uf;
  v.residuals.add("block_psd", v.witness.psd_residual(), tol);
  v.residuals.add("trace_preserving", v.witness.tp_residual(), 10.0 * tol);
  v.residuals.add("target_match", trace_norm(mapped - sigma), 10.0 * tol);
  if (!v.feasible) {
    Eigen::SelfAdjointEigenSolver<CMat> es(hermitize(sigma));
    if ((sigma * sigma).trace().real() > 1.0 - 1e-10) {
      auto prep = max_prep_fidelity(
          resource, es.eigenvectors().col(target.dim() - 1),
          target.hamiltonian, tol);
      v.fidelity_achieved = prep.fidelity;
    }
  }
  return v;
}

PrepResult max_prep_fidelity(const QuantumClock& resource,
                             const CVec& target_pure,
                             const HamiltonianSpec& h_out, double tol,
                             int max_iter) {
  if (target_pure.size() != h_out.dim())
    throw std::invalid_argument("max_prep_fidelity: dimension mismatch");
  CMat rho = to_energy(resource.hamiltonian, resource.rho);
  CVec phi = vec_to_energy(h_out, target_pure);
  phi /= phi.norm();
  auto prob = make_order_problem(resource.hamiltonian, h_out, {});
  RVec c = linear_fidelity_functional(prob.index, rho, phi);
  DykstraOptions opt;
  opt.tol = std::min(1e-7, tol);
  opt.max_iter = max_iter;

  PrepResult res;
  prob.halfspaces = {{c, 0.0}};
  int total_iter = 0;
  // the constant channel G(rho) = I/d is feasible, so lo = 1/d works
  double lo = 1.0 / h_out.dim(), hi = 1.0;
  prob.halfspaces[0].offset = hi;
  auto top = dykstra_feasible(prob, opt);
  total_iter += top.iterations;
  RVec x_best;
  if (top.feasible) {
    lo = hi;
    x_best = top.x;
  } else {
    prob.halfspaces[0].offset = lo;
    auto base = dykstra_feasible(prob, opt);
    total_iter += base.iterations;
    x_best = base.x;
    for (int round = 0; round < 20 && hi - lo > tol * 0.5; ++round) {
      double mid = 0.5 * (lo + hi);
      prob.halfspaces[0].offset = mid;
      auto out = dykstra_feasible(prob, opt);
      total_iter += out.iterations;
      if (out.feasible) {
        lo = mid;
        x_best = out.x;
      } else {
        hi = mid;
      }
    }
  }
  res.witness =
      witness_from_point(prob.index, x_best, resource.hamiltonian, h_out);
  double achieved =
      (phi.adjoint() * apply_energy_frame(res.witness, rho) * phi)(0, 0)
          .real();
  res.fidelity = std::min(1.0, std::max(lo, achieved));
  res.iterations = total_iter;
  return res;
}

ClassicalOrderVerdict classical_order(const ClassicalCircleClock& mu,
                                      const ClassicalCircleClock& mu_tilde,
                                      double tol) {
  if (mu.grid() != mu_tilde.grid())
    throw std::invalid_argument("classical_order: grid mismatch");
  if (std::abs(mu.omega - mu_tilde.omega) > 1e-12 * std::abs(mu.omega))
    throw std::invalid_argument("classical_order: omega mismatch");
  const int n = mu.grid();
  CVec mu_hat = fft(mu.density.cast<Complex>().eval());
  CVec mt_hat = fft(mu_tilde.density.cast<Complex>().eval());
  const double eps = 1e-10 * mu_hat.cwiseAbs().maxCoeff();

  ClassicalOrderVerdict v;
  CVec nu_hat = CVec::Zero(n);
  std::vector<bool> fixed(size_t(n), false);
  bool absent = false;
  for (int k = 0; k < n; ++k) {
    if (std::abs(mu_hat[k]) > eps) {
      nu_hat[k] = double(n) * mt_hat[k] / mu_hat[k];
      fixed[size_t(k)] = true;
    } else if (std::abs(mt_hat[k]) > tol * double(n)) {
      absent = true;  // target carries a mode the resource lacks
    }
  }
  RVec nu = ifft(nu_hat).real();
  if (!absent && nu.minCoeff() < -tol) {
    for (int round = 0; round < 1000; ++round) {
      RVec clipped = nu.cwiseMax(0.0);
      CVec h = fft(clipped.cast<Complex>().eval());
      for (int k = 0; k < n; ++k)
        if (fixed[size_t(k)]) h[k] = nu_hat[k];
      nu = ifft(h).real();
      if (nu.minCoeff() >= -tol) break;
    }
  }
  CVec nu_final = fft(nu.cast<Complex>().eval());
  double mode_res = 0.0;
  for (int k = 0; k < n; ++k)
    mode_res = std::max(
        mode_res, std::abs(mu_hat[k] * nu_final[k] / double(n) - mt_hat[k]) /
                      double(n));
  double neg = std::max(0.0, -nu.minCoeff());
  v.kernel = nu;
  v.residual = std::max(mode_res, neg);
  v.residuals.add("mode_consistency", mode_res, tol);
  v.residuals.add("nonnegativity", neg, tol);
  v.residuals.add("resource_support", absent ? 1.0 : 0.0, 0.5);
  v.feasible = !absent && v.residuals.ok();
  return v;
}

}  // namespace tempus
