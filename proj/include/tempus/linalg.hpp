#pragma once

#include <Eigen/Dense>
#include <complex>
#include <random>
#include <stdexcept>

namespace tempus {

using Complex = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;

inline constexpr double kPi = 3.14159265358979323846;
inline const Complex kI{0.0, 1.0};

inline CMat kron(const CMat& a, const CMat& b) {
  CMat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

// Trace out the first factor of a d1 x d2 bipartite operator.
inline CMat partial_trace_first(const CMat& rho, int d1, int d2) {
  CMat out = CMat::Zero(d2, d2);
  for (int a = 0; a < d1; ++a)
    out += rho.block(a * d2, a * d2, d2, d2);
  return out;
}

inline CMat partial_trace_second(const CMat& rho, int d1, int d2) {
  CMat out = CMat::Zero(d1, d1);
  for (int a = 0; a < d1; ++a)
    for (int b = 0; b < d1; ++b)
      out(a, b) = rho.block(a * d2, b * d2, d2, d2).trace();
  return out;
}

inline double hermiticity_residual(const CMat& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

inline CMat hermitize(const CMat& m) { return 0.5 * (m + m.adjoint()); }

inline CMat matrix_sqrt_psd(const CMat& m) {
  Eigen::SelfAdjointEigenSolver<CMat> es(hermitize(m));
  RVec lam = es.eigenvalues().cwiseMax(0.0);
  return es.eigenvectors() * lam.cwiseSqrt().asDiagonal() *
         es.eigenvectors().adjoint();
}

inline double trace_norm(const CMat& m) {
  return Eigen::JacobiSVD<CMat>(m).singularValues().sum();
}

// Frobenius projection onto the PSD cone.
inline CMat project_psd(const CMat& m) {
  Eigen::SelfAdjointEigenSolver<CMat> es(hermitize(m));
  RVec lam = es.eigenvalues().cwiseMax(0.0);
  return es.eigenvectors() * lam.asDiagonal() * es.eigenvectors().adjoint();
}

inline double min_eigenvalue(const CMat& m) {
  if (m.rows() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<CMat> es(hermitize(m));
  return es.eigenvalues().minCoeff();
}

using Rng = std::mt19937_64;

inline CMat ginibre(int rows, int cols, Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  CMat m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = Complex(g(rng), g(rng));
  return m;
}

inline CVec random_unit_vector(int d, Rng& rng) {
  CVec v = ginibre(d, 1, rng).col(0);
  return v / v.norm();
}

inline CMat random_density(int d, Rng& rng, int rank = 0) {
  if (rank <= 0) rank = d;
  CMat g = ginibre(d, rank, rng);
  CMat rho = g * g.adjoint();
  return rho / rho.trace().real();
}

}  // namespace tempus
