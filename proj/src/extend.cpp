#include "posdef/extend.hpp"

#include <cmath>
#include <limits>

#include "posdef/poles.hpp"

namespace posdef {

int levinson_classify(const std::vector<cdouble>& first_row, double shift,
                      double floor_rel) {
  const double a0 = first_row[0].real() - shift;
  const auto n = first_row.size();
  if (a0 < 0.0) return -1;
  if (n == 1) return a0 == 0.0 ? 0 : 1;
  const double floor = floor_rel * std::max(std::abs(a0), 1e-300);
  if (a0 <= floor) {
    for (std::size_t j = 1; j < n; ++j)
      if (std::abs(first_row[j]) > floor) return -1;
    return 0;
  }
  // Levinson-Durbin prediction-error recursion on r = first_row - shift*e_0:
  // positive definite iff every prediction error stays positive.
  std::vector<cdouble> a(n, 0.0);
  double err = a0;
  for (std::size_t k = 1; k < n; ++k) {
    cdouble acc = first_row[k];
    for (std::size_t j = 1; j < k; ++j) acc += a[j] * first_row[k - j];
    const cdouble kappa = -acc / err;
    for (std::size_t j = 1; 2 * j <= k; ++j) {
      const cdouble aj = a[j];
      const cdouble amj = a[k - j];
      a[j] = aj + kappa * std::conj(amj);
      if (2 * j < k) a[k - j] = amj + kappa * std::conj(aj);
    }
    a[k] = kappa;
    err *= 1.0 - std::norm(kappa);
    if (!std::isfinite(err) || err < -floor) return -1;
    if (err <= floor) {
      // Singular leading block: a PSD completion must keep the rank, i.e. the
      // remaining samples have to follow the recurrence of the kernel vector
      // (1, a1..ak).  Any deviation makes the matrix indefinite.
      double anorm = 1.0;
      for (std::size_t j = 1; j <= k; ++j) anorm += std::abs(a[j]);
      for (std::size_t m = k + 1; m < n; ++m) {
        cdouble res = first_row[m];
        for (std::size_t j = 1; j <= k; ++j) res += a[j] * first_row[m - j];
        if (std::abs(res) > floor * anorm) return -1;
      }
      return 0;
    }
  }
  return 1;
}

namespace {

double bisect_min_eig(const std::vector<cdouble>& f, double lo, double hi,
                      double tol) {
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (levinson_classify(f, mid) >= 0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double levinson_min_eig(const std::vector<cdouble>& first_row, double tol_rel) {
  const double f0 = first_row[0].real();
  double radius = 0.0;
  for (std::size_t j = 1; j < first_row.size(); ++j)
    radius += 2.0 * std::abs(first_row[j]);
  const double scale = std::max({std::abs(f0), radius, 1.0});
  return bisect_min_eig(first_row, f0 - radius - 1.0, f0 + 1e-30, tol_rel * scale);
}

namespace {

struct SearchState {
  std::vector<cdouble> cand;  // input row plus one trial entry at the back
  double f0;
  double psd_tol;
  double best_lam = -std::numeric_limits<double>::infinity();
  double best_x = 0.0, best_y = 0.0;
  double tol_abs;

  // keep the candidate only if it beats the incumbent smallest eigenvalue
  void consider(double x, double y) {
    if (std::hypot(x, y) > f0 * (1.0 + 1e-12)) return;
    cand.back() = cdouble(x, y);
    if (std::isfinite(best_lam)) {
      // cheap probe: not positive definite at the incumbent level, skip
      if (levinson_classify(cand, best_lam) < 0) return;
      const double lam = bisect_min_eig(cand, best_lam, f0 + 1e-30, tol_abs);
      if (lam > best_lam) {
        best_lam = lam;
        best_x = x;
        best_y = y;
      }
    } else {
      double radius = 0.0;
      for (std::size_t j = 1; j < cand.size(); ++j) radius += 2.0 * std::abs(cand[j]);
      best_lam = bisect_min_eig(cand, f0 - radius - 1.0, f0 + 1e-30, tol_abs);
      best_x = x;
      best_y = y;
    }
  }

  bool feasible(double x, double y) {
    if (std::hypot(x, y) > f0 * (1.0 + 1e-12)) return false;
    cand.back() = cdouble(x, y);
    return levinson_classify(cand, -psd_tol) >= 0;
  }
};

}  // namespace

std::pair<cdouble, ExtensionRecord> extend_one(const SampledSignal& s,
                                               const ExtensionOptions& opts) {
  if (opts.grid_points < 3 || opts.grid_points % 2 == 0)
    throw std::invalid_argument("extend_one: grid_points must be odd and >= 3");
  const double f0 = s.f0();
  if (f0 < 0.0) throw std::invalid_argument("extend_one: f0 must be nonnegative");
  const double psd_tol = opts.psd_tol ? *opts.psd_tol : Tol::psd(f0);
  const double tol_abs = 1e-13 * std::max(f0, 1.0);

  // slack of 10 bisection widths: the estimate itself is only good to tol_abs
  const double lam_in = levinson_min_eig(s.values);
  if (lam_in < -psd_tol - 10.0 * tol_abs)
    throw std::invalid_argument("extend_one: input Gramian is not PSD, denoise first");

  SearchState st;
  st.cand = s.values;
  st.cand.push_back(0.0);
  st.f0 = f0;
  st.psd_tol = psd_tol;
  st.tol_abs = tol_abs;

  // full disk |f| <= f0 at the initial resolution; count the feasible nodes
  const int g = opts.grid_points;
  const double cell = 2.0 * f0 / (g - 1);
  int feasible_nodes = 0;
  for (int ix = 0; ix < g; ++ix) {
    const double x = -f0 + ix * cell;
    for (int iy = 0; iy < g; ++iy) {
      const double y = -f0 + iy * cell;
      if (st.feasible(x, y)) ++feasible_nodes;
      st.consider(x, y);
    }
  }

  // zoom toward the incumbent, 5x finer per level, 21 nodes per axis over
  // +-2 previous cells; keep going past refine_levels until the choice sits
  // within resolution of the interlacing ceiling (the smallest eigenvalue can
  // only shrink as rows are appended, so stopping merely above -psd_tol
  // would bleed the whole budget over a long sequential extension)
  const double lam_floor = std::max(-psd_tol, std::min(0.0, lam_in) - 10.0 * tol_abs);
  double half = 2.0 * cell;
  int level = 0;
  while (level < opts.refine_levels ||
         (st.best_lam < lam_floor && level < opts.refine_levels + opts.max_extra_levels)) {
    ++level;
    if (half < 1e-16 * std::max(f0, 1.0)) break;
    const double step = half / 10.0;
    const double cx = st.best_x, cy = st.best_y;
    for (int ix = 0; ix <= 20; ++ix)
      for (int iy = 0; iy <= 20; ++iy)
        st.consider(cx - half + ix * step, cy - half + iy * step);
    half /= 5.0;
  }

  if (!std::isfinite(st.best_lam) || st.best_lam < -psd_tol)
    throw std::runtime_error("extend_one: no feasible extension found (input not PSD?)");

  ExtensionRecord rec;
  rec.area_estimate = feasible_nodes * cell * cell;
  rec.unique_flag = feasible_nodes <= 1;

  if (opts.strategy == ExtendStrategy::central) {
    // centroid of the feasible nodes; the feasible set is convex, so the
    // centroid of member nodes stays inside it
    if (feasible_nodes == 0)
      throw std::runtime_error("extend_one: no feasible grid node for central strategy");
    double sx = 0.0, sy = 0.0;
    for (int ix = 0; ix < g; ++ix) {
      const double x = -f0 + ix * cell;
      for (int iy = 0; iy < g; ++iy) {
        const double y = -f0 + iy * cell;
        if (st.feasible(x, y)) {
          sx += x;
          sy += y;
        }
      }
    }
    const double cx = sx / feasible_nodes, cy = sy / feasible_nodes;
    st.cand.back() = cdouble(cx, cy);
    rec.value = cdouble(cx, cy);
    rec.min_eig = levinson_min_eig(st.cand);
    if (rec.min_eig < -psd_tol)
      throw std::runtime_error("extend_one: centroid not PSD at grid resolution");
    return {rec.value, rec};
  }

  rec.value = cdouble(st.best_x, st.best_y);
  rec.min_eig = st.best_lam;
  return {rec.value, rec};
}

std::pair<SampledSignal, ExtensionReport> extend_many(const SampledSignal& s,
                                                      const ExtensionOptions& opts) {
  if (opts.n_points < 0)
    throw std::invalid_argument("extend_many: n_points must be nonnegative");
  ExtensionReport report;
  if (opts.n_points == 0) return {s, report};

  if (opts.strategy == ExtendStrategy::pole_model) {
    // decompose once and evaluate the model over the whole extended grid:
    // the known samples are replaced by their rank-r fit, which is what
    // keeps the final Gramian PSD by construction (positive weights)
    const auto T = build_gramian(s);
    const int r = opts.rank ? *opts.rank : estimate_rank(T, opts.singular_tol);
    const PoleModel model = decompose_cf(T, r, s.dt);
    const int n_total = static_cast<int>(s.size()) + opts.n_points;
    SampledSignal full = extrapolate(model, n_total);
    for (std::size_t j = s.size(); j < full.size(); ++j) {
      ExtensionRecord rec;
      rec.value = full.values[j];
      rec.area_estimate = 0.0;
      rec.min_eig = 0.0;  // rank-deficient model Gramian: smallest eigenvalue is 0
      rec.unique_flag = true;
      report.points.push_back(rec);
    }
    return {full, report};
  }

  SampledSignal out = s;
  for (int p = 0; p < opts.n_points; ++p) {
    auto [val, rec] = extend_one(out, opts);
    out.values.push_back(val);
    report.points.push_back(rec);
  }
  return {out, report};
}

}  // namespace posdef
