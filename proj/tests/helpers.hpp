#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "posdef/core.hpp"

namespace testutil {

using posdef::cdouble;

inline double rmse(const std::vector<cdouble>& a, const std::vector<cdouble>& b) {
  double acc = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) acc += std::norm(a[j] - b[j]);
  return std::sqrt(acc / double(a.size()));
}

inline double max_abs_diff(const std::vector<cdouble>& a, const std::vector<cdouble>& b) {
  double m = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) m = std::max(m, std::abs(a[j] - b[j]));
  return m;
}

inline Eigen::MatrixXcd random_hermitian(std::mt19937_64& rng, int n, double scale = 1.0) {
  std::normal_distribution<double> g(0.0, scale);
  Eigen::MatrixXcd M(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) M(i, j) = cdouble(g(rng), g(rng));
  return 0.5 * (M + M.adjoint()).eval();
}

// f_j = sum_r w_r e^{-i omega_r j dt}; positive weights make it PSD exactly.
inline posdef::SampledSignal pole_signal(const std::vector<double>& omega,
                                         const std::vector<double>& weight, double dt, int n) {
  std::vector<cdouble> v(static_cast<std::size_t>(n), 0.0);
  for (std::size_t r = 0; r < omega.size(); ++r)
    for (int j = 0; j < n; ++j)
      v[static_cast<std::size_t>(j)] += weight[r] * std::polar(1.0, -omega[r] * j * dt);
  return posdef::SampledSignal(dt, std::move(v));
}

}  // namespace testutil
