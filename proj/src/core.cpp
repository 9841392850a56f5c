#include "posdef/core.hpp"

#include <cmath>

namespace posdef {

HermitianToeplitz build_gramian(const std::vector<cdouble>& values) {
  if (values.empty()) throw std::invalid_argument("build_gramian: empty signal");
  return HermitianToeplitz(values);
}

HermitianToeplitz build_gramian(const SampledSignal& s) {
  return build_gramian(s.values);
}

Eigen::MatrixXcd dense(const HermitianToeplitz& T) {
  const auto n = static_cast<Eigen::Index>(T.size());
  Eigen::MatrixXcd M(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    M(i, i) = T.first_row[0];
    for (Eigen::Index j = i + 1; j < n; ++j) {
      M(i, j) = T.first_row[j - i];
      M(j, i) = std::conj(T.first_row[j - i]);
    }
  }
  return M;
}

static void require_hermitian(const Eigen::MatrixXcd& M) {
  const double scale = std::max(1.0, M.norm());
  if ((M - M.adjoint()).norm() > Tol::eig_rel * scale)
    throw std::invalid_argument("eig_hermitian: matrix storage is not Hermitian");
}

EigenDecomposition eig_hermitian(const HermitianDense& M) {
  require_hermitian(M.mat);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(M.mat);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("eig_hermitian: eigensolver failed to converge");
  return {es.eigenvalues(), es.eigenvectors()};
}

double min_eigenvalue(const HermitianDense& M) {
  require_hermitian(M.mat);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(M.mat, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("min_eigenvalue: eigensolver failed to converge");
  return es.eigenvalues()(0);
}

double min_eigenvalue(const HermitianToeplitz& T) {
  return min_eigenvalue(HermitianDense(dense(T)));
}

HermitianDense project_psd(const HermitianDense& M) {
  auto ed = eig_hermitian(M);
  Eigen::VectorXd lam = ed.eigenvalues.cwiseMax(0.0);
  Eigen::MatrixXcd P =
      ed.eigenvectors * lam.asDiagonal() * ed.eigenvectors.adjoint();
  P = ((P + P.adjoint()) / 2.0).eval();  // kill reconstruction round-off
  return HermitianDense(std::move(P));
}

HermitianToeplitz project_toeplitz(const HermitianDense& M) {
  require_hermitian(M.mat);
  const Eigen::Index n = M.size();
  std::vector<cdouble> row(static_cast<std::size_t>(n));
  for (Eigen::Index k = 0; k < n; ++k) {
    cdouble acc = 0.0;
    for (Eigen::Index i = 0; i + k < n; ++i) acc += M.mat(i, i + k);
    row[k] = acc / double(n - k);
  }
  return HermitianToeplitz(std::move(row));
}

HermitianToeplitz enforce_norm(HermitianToeplitz T, double f0) {
  if (f0 < 0.0) throw std::invalid_argument("enforce_norm: f0 must be nonnegative");
  T.first_row[0] = f0;
  return T;
}

double cost_negative_eigs(const HermitianToeplitz& T) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(dense(T), Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("cost_negative_eigs: eigensolver failed");
  double c = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double lam = es.eigenvalues()(i);
    if (lam < 0.0) c += 4.0 * lam * lam;
  }
  return c;
}

std::vector<cdouble> certify_psd(std::vector<cdouble> f) {
  if (f.empty()) throw std::invalid_argument("certify_psd: empty signal");
  const double f0 = f[0].real();
  f[0] = f0;
  if (f.size() == 1 || f0 == 0.0) return f;
  const double margin = 1e-14 * f0;
  const double lam = min_eigenvalue(build_gramian(f));
  if (lam >= margin) return f;
  // (1-a) T + a f0 I has spectrum (1-a) lam_i + a f0: same eigenvectors,
  // minimum lifted to the margin.
  const double a = (margin - lam) / (f0 - lam);
  for (std::size_t j = 1; j < f.size(); ++j) f[j] *= (1.0 - a);
  return f;
}

}  // namespace posdef
