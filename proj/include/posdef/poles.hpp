#pragma once

#include "posdef/core.hpp"

namespace posdef {

// Discrete spectral measure: f_j = sum_r weight_r * exp(-i omega_r j dt).
// Frequencies live in the Nyquist window (-pi/dt, pi/dt].
struct PoleModel {
  std::vector<double> omega;
  std::vector<double> weight;   // strictly positive
  double dt = 1.0;
  int source_length = 0;        // samples the model was fitted to

  std::size_t size() const { return omega.size(); }
};

// Count of eigenvalues above singular_tol * lambda_max. Input must be PSD
// within the scale tolerance.
int estimate_rank(const HermitianToeplitz& T, double singular_tol = Tol::singular);

// Rank-r pole decomposition T = A P A^H. Exact-rank inputs go through
// null-space polynomial rooting on the (r+1)-point leading submatrix;
// anything with a visible residual spectrum falls back to pseudospectrum
// peak-picking (music_frequencies). Weights by nonnegative least squares.
PoleModel decompose_cf(const HermitianToeplitz& T, int r, double dt,
                       int grid_points = 4096);

// Noise-subspace pseudospectrum maxima on a uniform frequency grid over the
// Nyquist window, refined by local parabolic interpolation.
std::vector<double> music_frequencies(const HermitianToeplitz& T, int r, double dt,
                                      int grid_points = 4096);

// Evaluate the model on j = 0..n_total-1.
SampledSignal extrapolate(const PoleModel& model, int n_total);

// Lawson-Hanson active-set nonnegative least squares, min |A x - b|, x >= 0.
Eigen::VectorXd nnls(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                     int max_iter = 200);

}  // namespace posdef
