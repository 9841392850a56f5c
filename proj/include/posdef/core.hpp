#pragma once

#include "posdef/types.hpp"

namespace posdef {

HermitianToeplitz build_gramian(const SampledSignal& s);
HermitianToeplitz build_gramian(const std::vector<cdouble>& values);

// Dense realization of the Toeplitz first row.
Eigen::MatrixXcd dense(const HermitianToeplitz& T);

// Eigenvalues ascending. Throws on non-Hermitian storage.
EigenDecomposition eig_hermitian(const HermitianDense& M);

double min_eigenvalue(const HermitianToeplitz& T);
double min_eigenvalue(const HermitianDense& M);

// Frobenius-nearest PSD matrix: clip negative eigenvalues to zero.
HermitianDense project_psd(const HermitianDense& M);

// Frobenius-nearest Hermitian Toeplitz matrix: average each diagonal.
HermitianToeplitz project_toeplitz(const HermitianDense& M);

// Pin the t=0 value; every other entry is untouched.
HermitianToeplitz enforce_norm(HermitianToeplitz T, double f0);

// C = sum_i [lambda_i (sgn lambda_i - 1)]^2 = 4 sum_{lambda_i < 0} lambda_i^2.
double cost_negative_eigs(const HermitianToeplitz& T);

// Certify an almost-PSD signal by blending toward f0 * identity:
// f_k -> (1-a) f_k for k >= 1 with the smallest a that lifts the minimum
// eigenvalue above zero. Toeplitz structure and f_0 are preserved exactly,
// eigenvectors are unchanged. No-op when already PSD.
std::vector<cdouble> certify_psd(std::vector<cdouble> f);

}  // namespace posdef
