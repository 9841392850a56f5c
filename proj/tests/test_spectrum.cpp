#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>

#include "fixtures.hpp"
#include "helpers.hpp"
#include "posdef/models.hpp"
#include "posdef/spectrum.hpp"

using namespace posdef;
using testutil::pole_signal;
constexpr double kPi = std::numbers::pi;

TEST_CASE("default grid spans the nyquist window") {
  const auto grid = default_omega_grid(0.1);
  REQUIRE(grid.size() == 2048);
  CHECK(grid.front() == doctest::Approx(-kPi / 0.1).epsilon(1e-15));
  CHECK(grid.back() == doctest::Approx(kPi / 0.1).epsilon(1e-15));
  for (std::size_t i = 1; i < grid.size(); ++i) CHECK(grid[i] > grid[i - 1]);
}

TEST_CASE("constant signal matches the finite geometric sum") {
  const double dt = 0.5, tau = 5.0;
  const int n = 40;
  SampledSignal s(dt, std::vector<cdouble>(n, 1.0));
  const auto sp = damped_ft(s, tau, default_omega_grid(dt, 257));
  for (std::size_t i = 0; i < sp.omegas.size(); ++i) {
    const cdouble q = std::exp(cdouble(-dt / tau, sp.omegas[i] * dt));
    // sum_{j=1}^{n-1} q^j = q (1 - q^{n-1}) / (1 - q)
    const cdouble partial = q * (1.0 - std::pow(q, n - 1)) / (1.0 - q);
    const double expect = dt * (1.0 + 2.0 * partial.real());
    CHECK(sp.values[i] == doctest::Approx(expect).epsilon(1e-12));
  }
}

TEST_CASE("single pole peaks at its own frequency") {
  const double dt = 0.2, w0 = 1.7;
  const auto s = pole_signal({w0}, {1.0}, dt, 400);
  const auto sp = damped_ft(s, 40.0, default_omega_grid(dt, 4096));
  std::size_t best = 0;
  for (std::size_t i = 1; i < sp.values.size(); ++i)
    if (sp.values[i] > sp.values[best]) best = i;
  CHECK(std::abs(sp.omegas[best] - w0) < 2.0 * kPi / dt / 4095 * 1.5);

  const auto peaks = find_peaks(sp, 1);
  REQUIRE(peaks.size() == 1);
  CHECK(std::abs(peaks[0].first - w0) < 1e-3);  // parabolic refinement
}

TEST_CASE("sum rule: mean of A over the window recovers f0") {
  const auto g = dimer_greens(DimerSpec{5.0, 2.3, 1.0, 10.0, 0}, 0.1, 101);
  const auto sp = damped_ft(g, 25.0, default_omega_grid(0.1, 2048));
  // trapezoid over one full period of every e^{i w j dt}
  double acc = 0.0;
  for (std::size_t i = 1; i < sp.omegas.size(); ++i)
    acc += 0.5 * (sp.values[i] + sp.values[i - 1]) * (sp.omegas[i] - sp.omegas[i - 1]);
  CHECK(acc / (2.0 * kPi) == doctest::Approx(g.f0()).epsilon(1e-10));
}

TEST_CASE("transform is linear in the signal") {
  const double dt = 0.3;
  const auto s1 = pole_signal({0.9}, {0.6}, dt, 50);
  const auto s2 = pole_signal({-2.0, 1.1}, {0.3, 0.7}, dt, 50);
  const double a = 1.7, b = -0.4;
  SampledSignal mix(dt, std::vector<cdouble>(50));
  for (int j = 0; j < 50; ++j)
    mix.values[static_cast<std::size_t>(j)] =
        a * s1.values[static_cast<std::size_t>(j)] + b * s2.values[static_cast<std::size_t>(j)];
  const auto grid = default_omega_grid(dt, 301);
  const auto f1 = damped_ft(s1, 10.0, grid);
  const auto f2 = damped_ft(s2, 10.0, grid);
  const auto fm = damped_ft(mix, 10.0, grid);
  for (std::size_t i = 0; i < grid.size(); ++i)
    CHECK(fm.values[i] ==
          doctest::Approx(a * f1.values[i] + b * f2.values[i]).epsilon(1e-11));
}

TEST_CASE("positivity report fields") {
  Spectrum sp;
  sp.omegas = {0.0, 1.0, 2.0};
  sp.values = {1.0, -0.5, 2.0};
  const auto strict = check_positivity(sp, 0.4);
  CHECK_FALSE(strict.pass);
  CHECK(strict.min_value == -0.5);
  CHECK(strict.fraction_below == doctest::Approx(1.0 / 3.0));
  const auto loose = check_positivity(sp, 0.6);
  CHECK(loose.pass);
  CHECK(loose.fraction_below == 0.0);
}

TEST_CASE("truncation tail bound matches the geometric series") {
  PoleModel m;
  m.omega = {0.4, -1.3};
  m.weight = {0.55, 0.45};
  m.dt = 0.1;
  const double tau = 100.0;
  const int n_from = 500;
  const double bound = truncation_tail_bound(m, n_from, tau);
  // brute-force partial sum far past any meaningful contribution
  double brute = 0.0;
  for (int j = n_from; j < n_from + 400000; ++j)
    brute += 0.1 * 1.0 * std::exp(-0.1 * j / tau);  // |f_j| = sum w = 1
  CHECK(bound == doctest::Approx(brute).epsilon(1e-8));
  CHECK(bound > 0.0);
}

TEST_CASE("pole-model spectra stay positive within the truncation tail") {
  const double dt = 0.1, tau = 100.0;
  PoleModel m;
  m.omega = {2.2, 3.8};
  m.weight = {0.8, 0.2};
  m.dt = dt;
  const int n = 10001;  // t through 1000 = 10 tau
  const auto s = extrapolate(m, n);
  const auto sp = damped_ft(s, tau, default_omega_grid(dt, 2048));
  const double tol = truncation_tail_bound(m, n, tau);
  const auto rep = check_positivity(sp, tol);
  CHECK(rep.pass);
  CHECK(rep.min_value > -tol);

  const auto peaks = find_peaks(sp, 2);
  REQUIRE(peaks.size() == 2);
  CHECK(peaks[0].second > peaks[1].second);
  CHECK(std::abs(peaks[0].first - 2.2) < 0.02);
  CHECK(std::abs(peaks[1].first - 3.8) < 0.02);
}

TEST_CASE("raw noisy short-window data breaks positivity") {
  SSHSpec ssh;
  const auto clean = ssh_greens(ssh, 0.1, 61);
  const auto noisy = add_noise(clean, {0.1, kNoiseSeed, NoiseTarget::both_parts});
  const auto sp = damped_ft(noisy, 100.0, default_omega_grid(0.1, 2048));
  // even a generous tolerance cannot absorb the sign violations
  const auto rep = check_positivity(sp, 1e-3);
  CHECK_FALSE(rep.pass);
  CHECK(rep.min_value < -1e-2);
}

TEST_CASE("input validation") {
  const auto s = pole_signal({1.0}, {1.0}, 0.1, 10);
  CHECK_THROWS_AS(damped_ft(s, 0.0, default_omega_grid(0.1)), std::invalid_argument);
  CHECK_THROWS_AS(damped_ft(s, -2.0, default_omega_grid(0.1)), std::invalid_argument);
  CHECK_THROWS_AS(damped_ft(s, 1.0, {}), std::invalid_argument);
  CHECK_THROWS_AS(damped_ft(s, 1.0, {0.0, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(damped_ft(s, 1.0, {1.0, 0.5}), std::invalid_argument);
}
