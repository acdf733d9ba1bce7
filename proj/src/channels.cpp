#include "tempus/channels.hpp"

#include <algorithm>
#include <cmath>

namespace tempus {

namespace {

void require_integer_spectra(const HamiltonianSpec& h_in,
                             const HamiltonianSpec& h_out) {
  if (!h_in.integer_spectrum() || !h_out.integer_spectrum())
    throw std::invalid_argument("covariant channel: non-integer spectrum");
}

CMat to_energy_basis(const HamiltonianSpec& h, const CMat& rho) {
  if (!h.has_basis()) return rho;
  return h.basis.adjoint() * rho * h.basis;
}

CMat from_energy_basis(const HamiltonianSpec& h, const CMat& rho) {
  if (!h.has_basis()) return rho;
  return h.basis * rho * h.basis.adjoint();
}

}  // namespace

ShiftBlockIndex ShiftBlockIndex::build(const HamiltonianSpec& h_in,
                                       const HamiltonianSpec& h_out) {
  require_integer_spectra(h_in, h_out);
  auto e_in = h_in.integer_levels();
  auto e_out = h_out.integer_levels();
  std::map<long, std::vector<std::pair<int, int>>> by_shift;
  for (int i = 0; i < h_in.dim(); ++i)
    for (int j = 0; j < h_out.dim(); ++j)
      by_shift[e_in[size_t(i)] - e_out[size_t(j)]].push_back({i, j});
  ShiftBlockIndex idx;
  idx.dim_in = h_in.dim();
  idx.dim_out = h_out.dim();
  for (auto& [shift, pairs] : by_shift) {
    idx.shifts.push_back(shift);
    idx.pairs.push_back(std::move(pairs));
  }
  return idx;
}

int ShiftBlockIndex::total_params() const {
  int n = 0;
  for (const auto& p : pairs) n += int(p.size() * p.size());
  return n;
}

CMat CovariantChoi::dense() const {
  const int d = index.dim_out * index.dim_in;
  CMat j = CMat::Zero(d, d);
  for (size_t b = 0; b < blocks.size(); ++b) {
    const auto& pr = index.pairs[b];
    for (size_t p = 0; p < pr.size(); ++p)
      for (size_t q = 0; q < pr.size(); ++q)
        j(pr[p].second * index.dim_in + pr[p].first,
          pr[q].second * index.dim_in + pr[q].first) = blocks[b](long(p),
                                                                 long(q));
  }
  return j;
}

double CovariantChoi::tp_residual() const {
  CMat j = dense();
  const int n = index.dim_in, m = index.dim_out;
  CMat tr = CMat::Zero(n, n);
  for (int a = 0; a < m; ++a)
    tr += j.block(a * n, a * n, n, n);
  return (tr - CMat::Identity(n, n)).cwiseAbs().maxCoeff();
}

double CovariantChoi::psd_residual() const {
  double worst = 0.0;
  for (const auto& b : blocks)
    worst = std::min(worst, min_eigenvalue(b));
  return std::max(0.0, -worst);
}

ValidationReport validate_graded_kraus(const GradedKraus& gk) {
  ValidationReport rep;
  auto e_in = gk.h_in.integer_levels();
  auto e_out = gk.h_out.integer_levels();
  double grading = 0.0;
  CMat sum = CMat::Zero(gk.h_in.dim(), gk.h_in.dim());
  for (const auto& k : gk.ops) {
    for (int j = 0; j < k.op.rows(); ++j)
      for (int i = 0; i < k.op.cols(); ++i)
        if (e_in[size_t(i)] - e_out[size_t(j)] != k.shift)
          grading = std::max(grading, std::abs(k.op(j, i)));
    sum += k.op.adjoint() * k.op;
  }
  rep.add("grading", grading, 1e-9);
  rep.add("completeness",
          (sum - CMat::Identity(sum.rows(), sum.cols())).cwiseAbs().maxCoeff(),
          1e-9);
  return rep;
}

CovariantChoi kraus_to_choi(const GradedKraus& gk) {
  CovariantChoi ch;
  ch.index = ShiftBlockIndex::build(gk.h_in, gk.h_out);
  ch.h_in = gk.h_in;
  ch.h_out = gk.h_out;
  for (size_t b = 0; b < ch.index.pairs.size(); ++b) {
    const auto& pr = ch.index.pairs[b];
    CMat block = CMat::Zero(long(pr.size()), long(pr.size()));
    for (const auto& k : gk.ops) {
      if (k.shift != ch.index.shifts[b]) continue;
      CVec v(long(pr.size()));
      for (size_t p = 0; p < pr.size(); ++p)
        v[long(p)] = k.op(pr[p].second, pr[p].first);
      block += v * v.adjoint();
    }
    ch.blocks.push_back(std::move(block));
  }
  return ch;
}

CMat dense_choi_from_kraus_list(const std::vector<CMat>& kraus, int d_in,
                                int d_out) {
  CMat j = CMat::Zero(d_out * d_in, d_out * d_in);
  for (const auto& a : kraus) {
    CVec v(d_out * d_in);
    for (int m = 0; m < d_out; ++m)
      for (int n = 0; n < d_in; ++n) v[m * d_in + n] = a(m, n);
    j += v * v.adjoint();
  }
  return j;
}

CovariantChoi choi_blocks_from_dense(const CMat& j,
                                     const HamiltonianSpec& h_in,
                                     const HamiltonianSpec& h_out,
                                     double* off_block) {
  CovariantChoi ch;
  ch.index = ShiftBlockIndex::build(h_in, h_out);
  ch.h_in = h_in;
  ch.h_out = h_out;
  const int n = h_in.dim();
  for (size_t b = 0; b < ch.index.pairs.size(); ++b) {
    const auto& pr = ch.index.pairs[b];
    CMat block(long(pr.size()), long(pr.size()));
    for (size_t p = 0; p < pr.size(); ++p)
      for (size_t q = 0; q < pr.size(); ++q)
        block(long(p), long(q)) =
            j(pr[p].second * n + pr[p].first, pr[q].second * n + pr[q].first);
    ch.blocks.push_back(std::move(block));
  }
  if (off_block) {
    CMat masked = ch.dense();
    *off_block = (j - masked).cwiseAbs().maxCoeff();
  }
  return ch;
}

CMat apply_channel(const GradedKraus& gk, const CMat& rho) {
  if (rho.rows() != gk.h_in.dim())
    throw std::invalid_argument("apply_channel: dimension mismatch");
  CMat r = to_energy_basis(gk.h_in, rho);
  CMat out = CMat::Zero(gk.h_out.dim(), gk.h_out.dim());
  for (const auto& k : gk.ops) out += k.op * r * k.op.adjoint();
  return from_energy_basis(gk.h_out, out);
}

CMat apply_energy_frame(const CovariantChoi& ch, const CMat& rho) {
  CMat out = CMat::Zero(ch.index.dim_out, ch.index.dim_out);
  for (size_t b = 0; b < ch.blocks.size(); ++b) {
    const auto& pr = ch.index.pairs[b];
    for (size_t p = 0; p < pr.size(); ++p)
      for (size_t q = 0; q < pr.size(); ++q)
        out(pr[p].second, pr[q].second) +=
            ch.blocks[b](long(p), long(q)) * rho(pr[p].first, pr[q].first);
  }
  return out;
}

CMat apply_channel(const CovariantChoi& ch, const CMat& rho) {
  if (rho.rows() != ch.index.dim_in)
    throw std::invalid_argument("apply_channel: dimension mismatch");
  CMat r = to_energy_basis(ch.h_in, rho);
  return from_energy_basis(ch.h_out, apply_energy_frame(ch, r));
}

CovariantChoi compose_channels(const CovariantChoi& second,
                               const CovariantChoi& first) {
  if (first.index.dim_out != second.index.dim_in)
    throw std::invalid_argument("compose_channels: dimension mismatch");
  const int n = first.index.dim_in;
  const int m = second.index.dim_out;
  CMat j = CMat::Zero(m * n, m * n);
  for (int i = 0; i < n; ++i)
    for (int i2 = 0; i2 < n; ++i2) {
      CMat e = CMat::Zero(n, n);
      e(i, i2) = 1.0;
      CMat sigma = apply_energy_frame(second, apply_energy_frame(first, e));
      for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) j(a * n + i, b * n + i2) = sigma(a, b);
    }
  return choi_blocks_from_dense(j, first.h_in, second.h_out, nullptr);
}

CovariantChoi twirl_channel(const std::vector<CMat>& kraus,
                            const HamiltonianSpec& h_in,
                            const HamiltonianSpec& h_out) {
  CMat j = dense_choi_from_kraus_list(kraus, h_in.dim(), h_out.dim());
  return choi_blocks_from_dense(j, h_in, h_out, nullptr);
}

GradedKraus ladder_kraus_form(const std::vector<Complex>& c,
                             const std::vector<Complex>& d) {
  if (c.size() != d.size() || c.empty())
    throw std::invalid_argument("ladder_kraus_form: need equal-length lists");
  const int levels = int(c.size());  // input levels 0..levels-1
  auto norm_at = [&](int n) {
    double cn = (n < levels) ? std::norm(c[size_t(n)]) : 0.0;
    return cn + std::norm(d[size_t(n - 1)]);
  };
  for (int n = 1; n <= levels; ++n) {
    double s = norm_at(n);
    if (std::abs(s - 1.0) > 1e-9)
      throw std::invalid_argument(
          "ladder_kraus_form: |c_n|^2 + |d_{n-1}|^2 = " + std::to_string(s) +
          " != 1 at n = " + std::to_string(n));
  }
  GradedKraus gk;
  gk.h_in = HamiltonianSpec::ladder(levels);
  gk.h_out = HamiltonianSpec::ladder(2);
  for (int j = 0; j < levels; ++j) {
    CMat a = CMat::Zero(2, levels);
    if (j == 0) {
      a(0, 0) = d[0];
    } else {
      a(0, j - 1) = c[size_t(j)];
      a(1, j) = d[size_t(j)];
    }
    // A_0 keeps energy 0 (shift 0); A_j lowers j-1 -> 0 and j -> 1.
    if (a.cwiseAbs().maxCoeff() > 0.0)
      gk.ops.push_back({j == 0 ? 0 : j - 1, a});
  }
  return gk;
}

ValidationReport check_preparation_constraint(const std::vector<Complex>& c,
                                              const std::vector<Complex>& d,
                                              const CVec& f) {
  ValidationReport rep;
  const int levels = int(std::min(c.size(), size_t(f.size())));
  // n = 0 with c_0 := 0 forces d_0 f_0 = 0.
  rep.add("bedi_n0", std::abs(d[0] * f[0]), 1e-9);
  for (int n = 1; n < levels; ++n) {
    double r = std::abs(c[size_t(n)] * f[n - 1] - d[size_t(n)] * f[n]);
    rep.add("bedi_n" + std::to_string(n), r, 1e-9);
  }
  return rep;
}

ValidationReport validate_covariant_povm(const CovariantPOVM& povm,
                                         const HamiltonianSpec& h) {
  ValidationReport rep;
  const int d = povm.dim(), n = povm.grid();
  CMat sum = CMat::Zero(d, d);
  double psd = 0.0;
  for (const auto& m : povm.effects) {
    sum += m;
    psd = std::min(psd, min_eigenvalue(m));
  }
  rep.add("completeness",
          (sum / double(n) - CMat::Identity(d, d)).cwiseAbs().maxCoeff(),
          1e-8);
  rep.add("effects_psd", std::max(0.0, -psd), 1e-9);
  double cov = 0.0;
  double period = clock_period(h);
  for (int k = 0; k < n; ++k) {
    CMat u = h.unitary(period * double(k) / double(n));
    cov = std::max(
        cov, (povm.effects[size_t(k)] - u * povm.effects[0] * u.adjoint())
                 .cwiseAbs()
                 .maxCoeff());
  }
  rep.add("covariance", cov, 1e-8);
  return rep;
}

CovariantPOVM canonical_phase_povm(int d, int n_grid) {
  if (n_grid < d)
    throw std::invalid_argument("canonical_phase_povm: grid smaller than dim");
  CovariantPOVM povm;
  for (int k = 0; k < n_grid; ++k) {
    CVec e(d);
    for (int n = 0; n < d; ++n)
      e[n] = std::exp(Complex(0.0, -2.0 * kPi * n * double(k) / n_grid));
    povm.effects.push_back(e * e.adjoint());
  }
  return povm;
}

ClassicalCircleClock q2c_transfer(const QuantumClock& clock,
                                  const CovariantPOVM& povm) {
  if (povm.dim() != clock.dim())
    throw std::invalid_argument("q2c_transfer: dimension mismatch");
  CMat r = to_energy_basis(clock.hamiltonian, clock.rho);
  RVec p(povm.grid());
  for (int k = 0; k < povm.grid(); ++k)
    p[k] = (r * povm.effects[size_t(k)]).trace().real();
  p = p.cwiseMax(0.0);
  p *= double(povm.grid()) / p.sum();
  // One revolution per quantum recurrence time.
  return {p, 2.0 * kPi / clock_period(clock.hamiltonian)};
}

QuantumClock c2q_prepare(const ClassicalCircleClock& measure,
                         const QuantumClock& seed) {
  const int n = measure.grid();
  const double t_period = 2.0 * kPi / measure.omega;
  CMat out = CMat::Zero(seed.dim(), seed.dim());
  for (int k = 0; k < n; ++k) {
    if (measure.density[k] == 0.0) continue;
    QuantumClock e = evolve(seed, t_period * double(k) / double(n));
    out += measure.density[k] / double(n) * e.rho;
  }
  return {clean_density(out), seed.hamiltonian};
}

CovariantChoi measure_prepare_choi(const CovariantPOVM& povm,
                                   const HamiltonianSpec& h_in,
                                   const QuantumClock& seed) {
  const int n_in = h_in.dim();
  const int n_out = seed.dim();
  const int grid = povm.grid();
  CMat j = CMat::Zero(n_out * n_in, n_out * n_in);
  for (int k = 0; k < grid; ++k) {
    CMat sigma = to_energy_basis(
        seed.hamiltonian, evolve_periods(seed, double(k) / grid).rho);
    const CMat& m = povm.effects[size_t(k)];
    for (int a = 0; a < n_out; ++a)
      for (int b = 0; b < n_out; ++b)
        for (int i = 0; i < n_in; ++i)
          for (int i2 = 0; i2 < n_in; ++i2)
            j(a * n_in + i, b * n_in + i2) +=
                sigma(a, b) * m(i2, i) / double(grid);
  }
  return choi_blocks_from_dense(j, h_in, seed.hamiltonian, nullptr);
}

GradedKraus random_covariant_channel(const HamiltonianSpec& h_in,
                                     const HamiltonianSpec& h_out, Rng& rng) {
  auto idx = ShiftBlockIndex::build(h_in, h_out);
  for (int attempt = 0; attempt < 64; ++attempt) {
    GradedKraus gk;
    gk.h_in = h_in;
    gk.h_out = h_out;
    std::normal_distribution<double> g(0.0, 1.0);
    for (size_t b = 0; b < idx.shifts.size(); ++b) {
      CMat a = CMat::Zero(h_out.dim(), h_in.dim());
      for (const auto& [i, j] : idx.pairs[b])
        a(j, i) = Complex(g(rng), g(rng));
      gk.ops.push_back({idx.shifts[b], a});
    }
    CMat m = CMat::Zero(h_in.dim(), h_in.dim());
    for (const auto& k : gk.ops) m += k.op.adjoint() * k.op;
    Eigen::SelfAdjointEigenSolver<CMat> es(hermitize(m));
    if (es.eigenvalues().minCoeff() < 1e-10) continue;
    CMat m_inv_sqrt = es.eigenvectors() *
                      es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
                      es.eigenvectors().adjoint();
    for (auto& k : gk.ops) k.op = k.op * m_inv_sqrt;
    return gk;
  }
  throw std::runtime_error("random_covariant_channel: degenerate samples");
}

GradedKraus random_covariant_isometry(const HamiltonianSpec& h_in,
                                      const HamiltonianSpec& h_out,
                                      long shift, Rng& rng) {
  auto e_in = h_in.integer_levels();
  auto e_out = h_out.integer_levels();
  CMat v = CMat::Zero(h_out.dim(), h_in.dim());
  // group input levels by energy
  std::map<long, std::vector<int>> groups;
  for (int i = 0; i < h_in.dim(); ++i) groups[e_in[size_t(i)]].push_back(i);
  for (const auto& [energy, ins] : groups) {
    std::vector<int> outs;
    for (int j = 0; j < h_out.dim(); ++j)
      if (e_out[size_t(j)] == energy - shift) outs.push_back(j);
    if (outs.size() < ins.size())
      throw std::invalid_argument(
          "random_covariant_isometry: output eigenspace too small at energy " +
          std::to_string(energy));
    CMat g = ginibre(int(outs.size()), int(ins.size()), rng);
    Eigen::HouseholderQR<CMat> qr(g);
    CMat q = qr.householderQ() * CMat::Identity(long(outs.size()),
                                                long(ins.size()));
    for (size_t a = 0; a < outs.size(); ++a)
      for (size_t b = 0; b < ins.size(); ++b)
        v(outs[a], ins[b]) = q(long(a), long(b));
  }
  GradedKraus gk;
  gk.h_in = h_in;
  gk.h_out = h_out;
  gk.ops.push_back({shift, v});
  return gk;
}

double covariance_residual(const CovariantChoi& ch, const CMat& rho,
                           int samples) {
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    double t = 2.0 * kPi * double(s) / samples;
    CMat u_in = ch.h_in.unitary(t);
    CMat u_out = ch.h_out.unitary(t);
    CMat lhs = apply_channel(ch, u_in * rho * u_in.adjoint());
    CMat rhs = u_out * apply_channel(ch, rho) * u_out.adjoint();
    worst = std::max(worst, (lhs - rhs).cwiseAbs().maxCoeff());
  }
  return worst;
}

}  // namespace tempus
