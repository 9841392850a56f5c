#pragma once

#include <optional>
#include <string>

#include "posdef/core.hpp"

namespace posdef {

enum class DenoiseStrategy { alternating, penalty };

struct DenoiseOptions {
  int max_iter = 500;                 // alternating projection cycles
  std::optional<double> conv_tol;     // default 1e-8 * f0
  std::optional<double> f0_known;     // pin the t=0 value when given
  DenoiseStrategy strategy = DenoiseStrategy::alternating;

  // penalty minimizer
  int sweeps = 3;
  int golden_iters = 40;              // per-axis golden-section iterations
  double bracket_sigmas = 2.0;        // initial bracket half-width, units of sigma_est
  std::optional<double> cost_tol;     // default 1e-10 * f0^2
};

struct DenoiseReport {
  DenoiseStrategy strategy = DenoiseStrategy::alternating;
  int iterations = 0;                 // alternating cycles or penalty sweeps
  bool converged = false;             // non-convergence is flagged, not thrown
  double final_change = 0.0;          // last max-norm change of the first row
  double final_cost = 0.0;
  double min_eig_raw = 0.0;           // before output certification
  double min_eig = 0.0;               // after
  double sigma_est = 0.0;             // penalty noise-scale estimate
  double f0_used = 0.0;
  bool f0_enforced = true;            // false: measured f_0, freed on the last pass
  double cost_initial = 0.0;          // penalty cost before the first sweep
  std::vector<double> history;        // one entry per iteration: first-row change
                                      // (alternating) or post-sweep cost (penalty)
};

// Alternating projection onto {PSD} -> {Toeplitz} -> {f_0 = const}, iterated
// to a fixed point, then the output is PSD-certified (certify_psd). The
// linear tail of the iteration is accelerated by geometric-series
// extrapolation whenever successive changes are parallel with stable ratio.
std::pair<SampledSignal, DenoiseReport> denoise_alternating(const SampledSignal& s,
                                                            const DenoiseOptions& opts = {});

// Coordinate-wise minimization of cost_negative_eigs: golden-section on the
// real and imaginary axis of each entry in turn, bracket shrinking with the
// observed step sizes between sweeps. Output is PSD-certified.
std::pair<SampledSignal, DenoiseReport> denoise_penalty(const SampledSignal& s,
                                                        const DenoiseOptions& opts = {});

std::pair<SampledSignal, DenoiseReport> denoise(const SampledSignal& s,
                                                const DenoiseOptions& opts);

// Robust noise scale: median absolute successive difference / (0.6745 sqrt(2)).
double estimate_noise_sigma(const SampledSignal& s);

}  // namespace posdef
