#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <complex>
#include <stdexcept>
#include <vector>

namespace posdef {

using cdouble = std::complex<double>;

// Default tolerances. All PSD decisions are made relative to the signal
// scale so that rescaling a dataset does not change any verdict.
struct Tol {
  static constexpr double eig_rel = 1e-12;       // eigensolver residual, rel ||M||_F
  static constexpr double conv_rel = 1e-8;       // denoise stop, rel f0
  static constexpr double cost_rel = 1e-10;      // penalty stop, rel f0^2
  static constexpr double cf = 1e-8;             // pole reconstruction residual
  static constexpr double singular = 1e-10;      // rank threshold, rel lambda_max
  static double psd(double f0) { return 1e-10 * std::max(f0, 1.0); }
};

// Complex samples f_0..f_n on the uniform grid t_j = j*dt. Only t >= 0 is
// stored; negative times are implied by f(-t) = conj(f(t)).
struct SampledSignal {
  double dt = 1.0;
  std::vector<cdouble> values;

  SampledSignal() = default;
  SampledSignal(double step, std::vector<cdouble> v) : dt(step), values(std::move(v)) {
    if (dt <= 0.0) throw std::invalid_argument("SampledSignal: dt must be positive");
    if (values.empty()) throw std::invalid_argument("SampledSignal: needs at least one sample");
  }

  std::size_t size() const { return values.size(); }
  double f0() const { return values.front().real(); }
};

// First row f_0..f_n of the Gramian; entry (i,j) = f_{j-i} for j >= i and
// the conjugate below. f_0 is kept real (the Hermitian part of a measured
// t=0 value; an imaginary part there has no Hermitian representation).
struct HermitianToeplitz {
  std::vector<cdouble> first_row;

  HermitianToeplitz() = default;
  explicit HermitianToeplitz(std::vector<cdouble> row) : first_row(std::move(row)) {
    if (first_row.empty())
      throw std::invalid_argument("HermitianToeplitz: empty first row");
    first_row[0] = cdouble(first_row[0].real(), 0.0);
  }

  std::size_t size() const { return first_row.size(); }
  double f0() const { return first_row.front().real(); }
};

// Dense Hermitian matrix. Produced by the projections; eig_hermitian
// validates the symmetry of anything passed in from outside.
struct HermitianDense {
  Eigen::MatrixXcd mat;

  HermitianDense() = default;
  explicit HermitianDense(Eigen::MatrixXcd m) : mat(std::move(m)) {
    if (mat.rows() != mat.cols())
      throw std::invalid_argument("HermitianDense: matrix must be square");
  }

  Eigen::Index size() const { return mat.rows(); }
};

struct EigenDecomposition {
  Eigen::VectorXd eigenvalues;   // ascending
  Eigen::MatrixXcd eigenvectors; // columns, unitary
};

}  // namespace posdef
