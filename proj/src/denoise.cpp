#include "posdef/denoise.hpp"

#include <algorithm>
#include <cmath>

namespace posdef {

double estimate_noise_sigma(const SampledSignal& s) {
  if (s.size() < 2) return 0.0;
  std::vector<double> d;
  d.reserve(2 * (s.size() - 1));
  for (std::size_t j = 0; j + 1 < s.size(); ++j) {
    d.push_back(std::abs(s.values[j + 1].real() - s.values[j].real()));
    d.push_back(std::abs(s.values[j + 1].imag() - s.values[j].imag()));
  }
  std::nth_element(d.begin(), d.begin() + d.size() / 2, d.end());
  const double mad = d[d.size() / 2];
  return mad / 0.6745 / std::sqrt(2.0);
}

static double resolve_f0(const SampledSignal& s, const DenoiseOptions& opts) {
  double f0 = opts.f0_known ? *opts.f0_known : s.values.front().real();
  if (f0 < 0.0) throw std::invalid_argument("denoise: f0 must be nonnegative");
  return f0;
}

std::pair<SampledSignal, DenoiseReport> denoise_alternating(const SampledSignal& s,
                                                            const DenoiseOptions& opts) {
  const double f0 = resolve_f0(s, opts);
  const double conv_tol = opts.conv_tol ? *opts.conv_tol : Tol::conv_rel * f0;

  DenoiseReport rep;
  rep.strategy = DenoiseStrategy::alternating;
  rep.f0_used = f0;

  std::vector<cdouble> f = s.values;
  f[0] = f[0].real();
  double delta = 0.0;
  std::vector<cdouble> d(f.size()), prev_d;
  int stable = 0;
  for (int it = 1; it <= opts.max_iter; ++it) {
    auto T = enforce_norm(project_toeplitz(project_psd(HermitianDense(dense(build_gramian(f))))), f0);
    delta = 0.0;
    for (std::size_t j = 0; j < f.size(); ++j) {
      d[j] = T.first_row[j] - f[j];
      delta = std::max(delta, std::abs(d[j]));
    }
    f = T.first_row;
    rep.iterations = it;
    rep.history.push_back(delta);
    if (delta <= conv_tol) {
      rep.converged = true;
      break;
    }

    // Near the fixed point the projection cycle is linear and one mode
    // dominates: successive changes become parallel with a constant ratio r.
    // Once two cycles confirm that, add the closed-form remainder of the
    // geometric series, r/(1-r) * d, and let further cycles verify. This
    // only skips ahead along the path the iteration is already on.
    if (!prev_d.empty()) {
      cdouble num = 0.0;
      double den = 0.0, d2 = 0.0;
      for (std::size_t j = 0; j < f.size(); ++j) {
        num += std::conj(prev_d[j]) * d[j];
        den += std::norm(prev_d[j]);
        d2 += std::norm(d[j]);
      }
      const cdouble r = den > 0.0 ? num / den : cdouble(0.0);
      double res2 = 0.0;
      for (std::size_t j = 0; j < f.size(); ++j) res2 += std::norm(d[j] - r * prev_d[j]);
      const bool one_mode =
          std::abs(r) > 0.2 && std::abs(r) < 0.98 && res2 <= 1e-4 * d2;
      stable = one_mode ? stable + 1 : 0;
      if (stable >= 2 && it < opts.max_iter) {
        const cdouble gain = r / (1.0 - r);
        for (std::size_t j = 1; j < f.size(); ++j) f[j] += gain * d[j];
        stable = 0;
        prev_d.clear();
        continue;
      }
    }
    prev_d = d;
  }
  rep.final_change = delta;

  if (!opts.f0_known) {
    // the measured t=0 value is only a noisy estimate: release it for one
    // final diagonal averaging
    f = project_toeplitz(project_psd(HermitianDense(dense(build_gramian(f))))).first_row;
    rep.f0_enforced = false;
    rep.f0_used = f[0].real();
  }

  rep.min_eig_raw = min_eigenvalue(build_gramian(f));
  f = certify_psd(std::move(f));
  rep.min_eig = min_eigenvalue(build_gramian(f));
  rep.final_cost = cost_negative_eigs(build_gramian(f));
  return {SampledSignal(s.dt, std::move(f)), rep};
}

namespace {

// dense Gramian kept in place; one coordinate swap rewrites its two diagonals
class CostEvaluator {
 public:
  explicit CostEvaluator(const std::vector<cdouble>& f)
      : n_(static_cast<Eigen::Index>(f.size())), M_(n_, n_) {
    for (Eigen::Index i = 0; i < n_; ++i)
      for (Eigen::Index j = i; j < n_; ++j) {
        M_(i, j) = f[j - i];
        M_(j, i) = std::conj(f[j - i]);
      }
  }

  void set(Eigen::Index k, cdouble val) {
    for (Eigen::Index i = 0; i + k < n_; ++i) {
      M_(i, i + k) = val;
      M_(i + k, i) = std::conj(val);
    }
  }

  double cost() {
    solver_.compute(M_, Eigen::EigenvaluesOnly);
    double c = 0.0;
    const auto& lam = solver_.eigenvalues();
    for (Eigen::Index i = 0; i < n_; ++i)
      if (lam(i) < 0.0) c += 4.0 * lam(i) * lam(i);
    return c;
  }

 private:
  Eigen::Index n_;
  Eigen::MatrixXcd M_;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver_;
};

constexpr double kGolden = 0.6180339887498949;

template <typename F>
std::pair<double, double> golden_min(F&& fun, double lo, double hi, int iters) {
  double a = lo, b = hi;
  double x1 = b - kGolden * (b - a);
  double x2 = a + kGolden * (b - a);
  double f1 = fun(x1), f2 = fun(x2);
  for (int i = 0; i < iters; ++i) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1; f2 = f1;
      x1 = b - kGolden * (b - a); f1 = fun(x1);
    } else {
      a = x1;
      x1 = x2; f1 = f2;
      x2 = a + kGolden * (b - a); f2 = fun(x2);
    }
  }
  return f1 <= f2 ? std::make_pair(x1, f1) : std::make_pair(x2, f2);
}

}  // namespace

std::pair<SampledSignal, DenoiseReport> denoise_penalty(const SampledSignal& s,
                                                        const DenoiseOptions& opts) {
  const double f0 = resolve_f0(s, opts);
  const double scale = std::max(f0, 1.0);
  const double cost_tol = opts.cost_tol ? *opts.cost_tol : Tol::cost_rel * f0 * f0;

  DenoiseReport rep;
  rep.strategy = DenoiseStrategy::penalty;
  rep.f0_used = f0;
  rep.f0_enforced = opts.f0_known.has_value();
  rep.sigma_est = estimate_noise_sigma(s);

  std::vector<cdouble> f = s.values;
  f[0] = f0;
  bool real_signal = true;
  for (const auto& v : f) real_signal &= (v.imag() == 0.0);

  CostEvaluator ev(f);
  double cost = ev.cost();
  rep.cost_initial = cost;

  double w = opts.bracket_sigmas * rep.sigma_est;
  if (w <= 0.0) w = 0.1 * scale;

  const auto n = static_cast<Eigen::Index>(f.size());
  for (int sweep = 1; sweep <= opts.sweeps && cost > cost_tol; ++sweep) {
    double max_step = 0.0;
    for (Eigen::Index j = 1; j < n; ++j) {
      for (int axis = 0; axis < (real_signal ? 1 : 2); ++axis) {
        const cdouble base = f[j];
        const cdouble dir = axis == 0 ? cdouble(1, 0) : cdouble(0, 1);
        auto fun = [&](double x) {
          ev.set(j, base + dir * x);
          return ev.cost();
        };
        double ww = w;
        auto [x, c] = golden_min(fun, -ww, ww, opts.golden_iters);
        while (std::abs(x) > 0.9 * ww && ww < 64.0 * scale) {
          ww *= 4.0;
          std::tie(x, c) = golden_min(fun, -ww, ww, opts.golden_iters);
        }
        if (c < cost) {
          f[j] = base + dir * x;
          cost = c;
          max_step = std::max(max_step, std::abs(x));
        }
        ev.set(j, f[j]);
      }
    }
    rep.iterations = sweep;
    rep.history.push_back(cost);
    if (max_step == 0.0) break;
    w = std::max(std::min(w, 4.0 * max_step), 1e-13 * scale);
  }
  rep.converged = cost <= cost_tol;

  rep.min_eig_raw = min_eigenvalue(build_gramian(f));
  f = certify_psd(std::move(f));
  rep.min_eig = min_eigenvalue(build_gramian(f));
  rep.final_cost = cost_negative_eigs(build_gramian(f));
  return {SampledSignal(s.dt, std::move(f)), rep};
}

std::pair<SampledSignal, DenoiseReport> denoise(const SampledSignal& s,
                                                const DenoiseOptions& opts) {
  return opts.strategy == DenoiseStrategy::penalty ? denoise_penalty(s, opts)
                                                   : denoise_alternating(s, opts);
}

}  // namespace posdef
