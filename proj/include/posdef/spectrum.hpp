#pragma once

#include "posdef/core.hpp"
#include "posdef/poles.hpp"

namespace posdef {

struct Spectrum {
  std::vector<double> omegas;   // strictly increasing
  std::vector<double> values;   // A(omega), real by Hermitian symmetry
  double tau = 0.0;
  double dt = 0.0;
};

struct PositivityReport {
  double min_value = 0.0;
  double fraction_below = 0.0;  // fraction of grid points under -tol
  bool pass = false;
};

// A(w) = dt * ( f_0 + 2 Re sum_{j>=1} f_j e^{i w t_j} e^{-t_j/tau} ).
// The damping envelope e^{-|t|/tau} is itself positive definite, so only
// the finite window can break positivity, by at most the truncation tail.
Spectrum damped_ft(const SampledSignal& s, double tau, const std::vector<double>& omegas);

std::vector<double> default_omega_grid(double dt, int n = 2048);

PositivityReport check_positivity(const Spectrum& sp, double tol);

// dt * sum_{j > n_from-1} |f_j| e^{-t_j/tau} for a pole-model tail:
// bound on how far truncation at n_from samples can push A(w) negative.
double truncation_tail_bound(const PoleModel& model, int n_from, double tau);

// Local maxima ranked by height; (omega, value), tallest first.
std::vector<std::pair<double, double>> find_peaks(const Spectrum& sp, int count);

}  // namespace posdef
