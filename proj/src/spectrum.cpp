#include "posdef/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace posdef {

Spectrum damped_ft(const SampledSignal& s, double tau, const std::vector<double>& omegas) {
  if (tau <= 0.0) throw std::invalid_argument("damped_ft: tau must be positive");
  if (omegas.empty()) throw std::invalid_argument("damped_ft: empty frequency grid");
  for (std::size_t i = 1; i < omegas.size(); ++i)
    if (omegas[i] <= omegas[i - 1])
      throw std::invalid_argument("damped_ft: frequency grid must be strictly increasing");

  const auto n = s.size();
  std::vector<double> damped_re(n), damped_im(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double env = std::exp(-double(j) * s.dt / tau);
    damped_re[j] = s.values[j].real() * env;
    damped_im[j] = s.values[j].imag() * env;
  }

  Spectrum sp;
  sp.tau = tau;
  sp.dt = s.dt;
  sp.omegas = omegas;
  sp.values.resize(omegas.size());
  for (std::size_t w = 0; w < omegas.size(); ++w) {
    // A(w) = dt (f_0 + 2 Re sum_{j>=1} f_j e^{i w t_j} e^{-t_j/tau})
    const cdouble rot = std::polar(1.0, omegas[w] * s.dt);
    cdouble ph = rot;
    double acc = damped_re[0];
    for (std::size_t j = 1; j < n; ++j) {
      acc += 2.0 * (damped_re[j] * ph.real() - damped_im[j] * ph.imag());
      ph *= rot;
    }
    sp.values[w] = s.dt * acc;
  }
  return sp;
}

std::vector<double> default_omega_grid(double dt, int n) {
  if (dt <= 0.0) throw std::invalid_argument("default_omega_grid: dt must be positive");
  if (n < 2) throw std::invalid_argument("default_omega_grid: need at least two points");
  const double wmax = std::numbers::pi / dt;
  std::vector<double> grid(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    grid[static_cast<std::size_t>(i)] = -wmax + 2.0 * wmax * double(i) / double(n - 1);
  return grid;
}

PositivityReport check_positivity(const Spectrum& sp, double tol) {
  PositivityReport rep;
  rep.min_value = *std::min_element(sp.values.begin(), sp.values.end());
  std::size_t below = 0;
  for (double v : sp.values)
    if (v < -tol) ++below;
  rep.fraction_below = double(below) / double(sp.values.size());
  rep.pass = rep.min_value >= -tol;
  return rep;
}

double truncation_tail_bound(const PoleModel& model, int n_from, double tau) {
  if (tau <= 0.0) throw std::invalid_argument("truncation_tail_bound: tau must be positive");
  double total_weight = 0.0;
  for (double p : model.weight) total_weight += p;
  const double q = std::exp(-model.dt / tau);
  return model.dt * total_weight * std::pow(q, double(n_from)) / (1.0 - q);
}

std::vector<std::pair<double, double>> find_peaks(const Spectrum& sp, int count) {
  std::vector<std::pair<double, std::size_t>> maxima;  // (height, index)
  for (std::size_t i = 1; i + 1 < sp.values.size(); ++i)
    if (sp.values[i] > sp.values[i - 1] && sp.values[i] >= sp.values[i + 1])
      maxima.emplace_back(sp.values[i], i);
  std::sort(maxima.rbegin(), maxima.rend());
  if (static_cast<int>(maxima.size()) > count) maxima.resize(static_cast<std::size_t>(count));

  std::vector<std::pair<double, double>> peaks;
  for (auto [height, i] : maxima) {
    // parabolic vertex through the three samples around the maximum
    const double ym = sp.values[i - 1], y0 = sp.values[i], yp = sp.values[i + 1];
    const double denom = ym - 2.0 * y0 + yp;
    double shift = 0.0;
    if (denom < 0.0) shift = std::clamp(0.5 * (ym - yp) / denom, -0.5, 0.5);
    const double dw = i + 1 < sp.omegas.size() ? sp.omegas[i + 1] - sp.omegas[i]
                                               : sp.omegas[i] - sp.omegas[i - 1];
    peaks.emplace_back(sp.omegas[i] + shift * dw, height);
  }
  return peaks;
}

}  // namespace posdef
