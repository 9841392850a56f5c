#pragma once

#include <optional>

#include "posdef/core.hpp"

namespace posdef {

enum class ExtendStrategy { max_min_eig, central, pole_model };

struct ExtensionOptions {
  int n_points = 1;
  ExtendStrategy strategy = ExtendStrategy::max_min_eig;
  int grid_points = 41;              // initial grid per axis, odd so 0 is a node
  int refine_levels = 3;             // each level is 5x finer around the incumbent
  int max_extra_levels = 60;         // keep refining until the choice is PSD
  double singular_tol = Tol::singular;  // rank threshold for pole_model
  std::optional<double> psd_tol;     // default 1e-10 * max(f0, 1)
  std::optional<int> rank;           // pole_model: override estimate_rank
};

struct ExtensionRecord {
  cdouble value;
  double area_estimate = 0.0;        // feasible area on the initial grid
  double min_eig = 0.0;              // of the enlarged Gramian at the choice
  bool unique_flag = false;          // feasible area below grid resolution
};

struct ExtensionReport {
  std::vector<ExtensionRecord> points;
};

// One more sample: search the disk |f| <= f_0 for the value keeping the
// enlarged Gramian PSD, by multilevel grid refinement.
std::pair<cdouble, ExtensionRecord> extend_one(const SampledSignal& s,
                                               const ExtensionOptions& opts = {});

// Append n_points sequentially. Under pole_model the rank-r decomposition is
// evaluated over the whole extended grid instead, so the known samples are
// replaced by their fit and the result is PSD by construction.
std::pair<SampledSignal, ExtensionReport> extend_many(const SampledSignal& s,
                                                      const ExtensionOptions& opts);

// Levinson-based tools for Hermitian Toeplitz spectra; cheaper than a dense
// eigensolve when only the smallest eigenvalue is wanted.
// Classifies T - shift*I: +1 positive definite, 0 singular within the
// relative floor, -1 indefinite.
int levinson_classify(const std::vector<cdouble>& first_row, double shift,
                      double floor_rel = 1e-14);

// Smallest eigenvalue by bisection on levinson_classify.
double levinson_min_eig(const std::vector<cdouble>& first_row, double tol_rel = 1e-13);

}  // namespace posdef
