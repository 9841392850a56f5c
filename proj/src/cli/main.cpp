#include <CLI11.hpp>
#include <cmath>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>

#include "posdef/denoise.hpp"
#include "posdef/extend.hpp"
#include "posdef/io.hpp"
#include "posdef/models.hpp"
#include "posdef/poles.hpp"
#include "posdef/spectrum.hpp"

namespace {

using namespace posdef;

std::string fmt(double x) { return format_double(x); }

void emit_report(const std::optional<std::string>& path, const Report& rep) {
  if (path)
    write_report(*path, rep);
  else
    std::cout << format_report(rep);
}

struct GenerateArgs {
  std::string model;
  std::string output;
  // dimer
  double u = 5.0, eps = 2.3, hopping = 1.0, beta = 10.0;
  // ssh
  int sites = 8;
  double delta = 0.4, mu = -3.0, vnn = 1.0, k = std::numbers::pi / 2;
  std::string convention = "main_text";
  // grid and noise
  double dt = 0.1, tmax = 10.0;
  double sigma = 0.0;
  std::uint64_t seed = 0;
  std::string noise_target = "both";

  void run() const {
    const int n = static_cast<int>(std::lround(tmax / dt)) + 1;
    SampledSignal clean = [&] {
      if (model == "dimer") {
        DimerSpec spec{u, eps, hopping, beta};
        return dimer_greens(spec, dt, n);
      }
      SSHSpec spec{sites, delta, mu, vnn, k,
                   convention == "supplement" ? SSHConvention::supplement
                                              : SSHConvention::main_text};
      return ssh_greens(spec, dt, n);
    }();
    NoiseSpec noise{sigma, seed,
                    noise_target == "real" ? NoiseTarget::real_only : NoiseTarget::both_parts};
    const SampledSignal out = add_noise(clean, noise);
    write_signal_csv(output, out);

    Report meta{{"model", model}};
    if (model == "dimer") {
      meta.emplace_back("u", fmt(u));
      meta.emplace_back("eps", fmt(eps));
      meta.emplace_back("hopping", fmt(hopping));
      meta.emplace_back("beta", fmt(beta));
    } else {
      meta.emplace_back("sites", std::to_string(sites));
      meta.emplace_back("delta", fmt(delta));
      meta.emplace_back("mu", fmt(mu));
      meta.emplace_back("vnn", fmt(vnn));
      meta.emplace_back("k", fmt(k));
      meta.emplace_back("convention", convention);
    }
    meta.emplace_back("dt", fmt(dt));
    meta.emplace_back("n", std::to_string(n));
    meta.emplace_back("sigma", fmt(sigma));
    meta.emplace_back("seed", std::to_string(seed));
    meta.emplace_back("noise_target", noise_target);
    meta.emplace_back("f0", fmt(out.values.front().real()));
    write_report(output + ".meta", meta);
  }
};

struct DenoiseArgs {
  std::string input, output;
  std::optional<std::string> report;
  std::string strategy = "alternating";
  std::optional<double> f0;
  int max_iter = 500;
  std::optional<double> conv_tol;
  int sweeps = 3;
  int golden_iters = 40;
  double bracket_sigmas = 2.0;
  std::optional<double> cost_tol;

  void run() const {
    const SampledSignal in = read_signal_csv(input);
    DenoiseOptions opts;
    opts.strategy =
        strategy == "penalty" ? DenoiseStrategy::penalty : DenoiseStrategy::alternating;
    opts.f0_known = f0;
    opts.max_iter = max_iter;
    opts.conv_tol = conv_tol;
    opts.sweeps = sweeps;
    opts.golden_iters = golden_iters;
    opts.bracket_sigmas = bracket_sigmas;
    opts.cost_tol = cost_tol;
    auto [out, rep] = denoise(in, opts);
    write_signal_csv(output, out);

    Report r{{"strategy", strategy},
             {"iterations", std::to_string(rep.iterations)},
             {"converged", rep.converged ? "true" : "false"},
             {"final_change", fmt(rep.final_change)},
             {"final_cost", fmt(rep.final_cost)},
             {"min_eig_raw", fmt(rep.min_eig_raw)},
             {"min_eig", fmt(rep.min_eig)},
             {"f0_used", fmt(rep.f0_used)},
             {"f0_enforced", rep.f0_enforced ? "true" : "false"}};
    if (opts.strategy == DenoiseStrategy::penalty) {
      r.emplace_back("sigma_est", fmt(rep.sigma_est));
      r.emplace_back("cost_start", fmt(rep.cost_initial));
      r.emplace_back("cost_end",
                     fmt(rep.history.empty() ? rep.cost_initial : rep.history.back()));
    }
    emit_report(report, r);
  }
};

struct ExtendArgs {
  std::string input, output;
  std::optional<std::string> report;
  int points = 1;
  std::string strategy = "max_min_eig";
  int grid_points = 41;
  int refine_levels = 3;
  int max_extra_levels = 60;
  std::optional<double> psd_tol;
  double singular_tol = Tol::singular;
  int rank = 0;

  void run() const {
    const SampledSignal in = read_signal_csv(input);
    ExtensionOptions opts;
    opts.n_points = points;
    opts.strategy = strategy == "central"      ? ExtendStrategy::central
                    : strategy == "pole_model" ? ExtendStrategy::pole_model
                                               : ExtendStrategy::max_min_eig;
    opts.grid_points = grid_points;
    opts.refine_levels = refine_levels;
    opts.max_extra_levels = max_extra_levels;
    opts.psd_tol = psd_tol;
    opts.singular_tol = singular_tol;
    if (rank > 0) opts.rank = rank;
    auto [out, rep] = extend_many(in, opts);
    write_signal_csv(output, out);

    Report r{{"strategy", strategy},
             {"points", std::to_string(rep.points.size())},
             {"n_out", std::to_string(out.size())}};
    int unique_count = 0;
    for (const auto& p : rep.points) unique_count += p.unique_flag ? 1 : 0;
    r.emplace_back("unique_points", std::to_string(unique_count));
    for (std::size_t i = 0; i < rep.points.size(); ++i) {
      const auto& p = rep.points[i];
      r.emplace_back("point_" + std::to_string(in.size() + i),
                     "re=" + fmt(p.value.real()) + " im=" + fmt(p.value.imag()) +
                         " area=" + fmt(p.area_estimate) + " min_eig=" + fmt(p.min_eig) +
                         " unique=" + (p.unique_flag ? "1" : "0"));
    }
    emit_report(report, r);
  }
};

struct PolesArgs {
  std::string input, output;
  std::optional<std::string> report;
  int rank = 0;
  double singular_tol = Tol::singular;
  int music_grid = 4096;

  void run() const {
    const SampledSignal in = read_signal_csv(input);
    const auto T = build_gramian(in);
    const int r = rank > 0 ? rank : estimate_rank(T, singular_tol);
    const PoleModel model = decompose_cf(T, r, in.dt, music_grid);
    write_pole_csv(output, model);

    // reconstruction residual, Frobenius over the full Toeplitz layout
    const auto recon = extrapolate(model, static_cast<int>(in.size()));
    double num = 0.0, den = 0.0;
    const auto n = in.size();
    for (std::size_t kk = 0; kk < n; ++kk) {
      const double mult = kk == 0 ? double(n) : 2.0 * double(n - kk);
      num += mult * std::norm(recon.values[kk] - T.first_row[kk]);
      den += mult * std::norm(T.first_row[kk]);
    }
    double wsum = 0.0;
    for (double w : model.weight) wsum += w;
    Report rep{{"rank_used", std::to_string(r)},
               {"poles", std::to_string(model.size())},
               {"weight_sum", fmt(wsum)},
               {"f0", fmt(T.f0())},
               {"recon_residual", fmt(den > 0.0 ? std::sqrt(num / den) : 0.0)}};
    emit_report(report, rep);
  }
};

struct SpectrumArgs {
  std::string input, output;
  std::optional<std::string> report;
  double tau = 100.0;
  std::optional<double> omega_min, omega_max;
  int omega_points = 2048;
  std::optional<double> positivity_tol;

  void run() const {
    const SampledSignal in = read_signal_csv(input);
    std::vector<double> grid;
    if (omega_min || omega_max) {
      const double lo = omega_min.value_or(-std::numbers::pi / in.dt);
      const double hi = omega_max.value_or(std::numbers::pi / in.dt);
      if (hi <= lo) throw std::runtime_error("spectrum: omega-max must exceed omega-min");
      grid.resize(static_cast<std::size_t>(omega_points));
      for (int i = 0; i < omega_points; ++i)
        grid[static_cast<std::size_t>(i)] = lo + (hi - lo) * double(i) / double(omega_points - 1);
    } else {
      grid = default_omega_grid(in.dt, omega_points);
    }
    const Spectrum sp = damped_ft(in, tau, grid);
    write_spectrum_csv(output, sp);

    double peak = 0.0;
    for (double v : sp.values) peak = std::max(peak, std::abs(v));
    const double tol = positivity_tol ? *positivity_tol : 1e-12 * peak;
    const auto pos = check_positivity(sp, tol);
    Report rep{{"tau", fmt(tau)},
               {"omega_points", std::to_string(omega_points)},
               {"min_value", fmt(pos.min_value)},
               {"fraction_below", fmt(pos.fraction_below)},
               {"positivity_tol", fmt(tol)},
               {"positivity_pass", pos.pass ? "true" : "false"}};
    emit_report(report, rep);
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"denoise, extend and spectrally analyze positive definite time series"};
  app.require_subcommand(1);
  app.allow_config_extras(CLI::config_extras_mode::error);  // unknown config keys are rejected
  app.fallthrough();  // --config may follow the subcommand name
  app.set_config("--config", "",
                 "key=value config file; subcommand options go in a [subcommand] section");

  GenerateArgs gen;
  auto* g = app.add_subcommand("generate", "produce a model signal file");
  g->add_option("--model", gen.model, "dimer or ssh")
      ->required()
      ->check(CLI::IsMember({"dimer", "ssh"}));
  g->add_option("-o,--output", gen.output, "output signal file")->required();
  g->add_option("--u", gen.u, "dimer on-site repulsion");
  g->add_option("--eps", gen.eps, "dimer level energy");
  g->add_option("--hopping", gen.hopping, "dimer inter-site hopping");
  g->add_option("--beta", gen.beta, "dimer inverse temperature");
  g->add_option("--sites", gen.sites, "ssh ring size (even)");
  g->add_option("--delta", gen.delta, "ssh hopping alternation");
  g->add_option("--mu", gen.mu, "ssh chemical potential");
  g->add_option("--vnn", gen.vnn, "ssh hopping scale");
  g->add_option("--k", gen.k, "ssh momentum (2 pi m / sites)");
  g->add_option("--convention", gen.convention, "ssh hopping convention")
      ->check(CLI::IsMember({"main_text", "supplement"}));
  g->add_option("--dt", gen.dt, "time step")->check(CLI::PositiveNumber);
  g->add_option("--tmax", gen.tmax, "last sample time")->check(CLI::PositiveNumber);
  g->add_option("--sigma", gen.sigma, "Gaussian noise level");
  g->add_option("--seed", gen.seed, "noise PRNG seed");
  g->add_option("--noise-target", gen.noise_target, "noisy parts: real or both")
      ->check(CLI::IsMember({"real", "both"}));
  g->callback([&] { gen.run(); });

  DenoiseArgs den;
  auto* d = app.add_subcommand("denoise", "project a noisy signal back to positive definite");
  d->add_option("-i,--input", den.input, "input signal file")->required();
  d->add_option("-o,--output", den.output, "output signal file")->required();
  d->add_option("--report", den.report, "write the report here instead of stdout");
  d->add_option("--strategy", den.strategy, "alternating or penalty")
      ->check(CLI::IsMember({"alternating", "penalty"}));
  d->add_option("--f0", den.f0, "known t=0 value to pin");
  d->add_option("--max-iter", den.max_iter, "alternating iteration cap");
  d->add_option("--conv-tol", den.conv_tol, "stop when the first row moves less than this");
  d->add_option("--sweeps", den.sweeps, "penalty sweeps");
  d->add_option("--golden-iters", den.golden_iters, "penalty line-search iterations");
  d->add_option("--bracket-sigmas", den.bracket_sigmas, "penalty bracket width in noise units");
  d->add_option("--cost-tol", den.cost_tol, "penalty stop threshold");
  d->callback([&] { den.run(); });

  ExtendArgs ext;
  auto* e = app.add_subcommand("extend", "extend a positive definite signal to later times");
  e->add_option("-i,--input", ext.input, "input signal file")->required();
  e->add_option("-o,--output", ext.output, "output signal file")->required();
  e->add_option("--report", ext.report, "write the report here instead of stdout");
  e->add_option("--points", ext.points, "number of samples to append")->required();
  e->add_option("--strategy", ext.strategy, "max_min_eig, central or pole_model")
      ->check(CLI::IsMember({"max_min_eig", "central", "pole_model"}));
  e->add_option("--grid-points", ext.grid_points, "initial search grid per axis (odd)");
  e->add_option("--refine-levels", ext.refine_levels, "refinement levels (5x each)");
  e->add_option("--max-extra-levels", ext.max_extra_levels, "extra levels until PSD");
  e->add_option("--psd-tol", ext.psd_tol, "PSD acceptance tolerance");
  e->add_option("--singular-tol", ext.singular_tol, "rank threshold for pole_model");
  e->add_option("--rank", ext.rank, "pole_model rank override (0 = automatic)");
  e->callback([&] { ext.run(); });

  PolesArgs pol;
  auto* p = app.add_subcommand("poles", "decompose into oscillation frequencies and weights");
  p->add_option("-i,--input", pol.input, "input signal file")->required();
  p->add_option("-o,--output", pol.output, "output pole table")->required();
  p->add_option("--report", pol.report, "write the report here instead of stdout");
  p->add_option("--rank", pol.rank, "pole count (0 = automatic)");
  p->add_option("--singular-tol", pol.singular_tol, "rank threshold");
  p->add_option("--music-grid", pol.music_grid, "pseudospectrum grid size");
  p->callback([&] { pol.run(); });

  SpectrumArgs spc;
  auto* s = app.add_subcommand("spectrum", "damped Fourier transform to real frequency");
  s->add_option("-i,--input", spc.input, "input signal file")->required();
  s->add_option("-o,--output", spc.output, "output spectrum table")->required();
  s->add_option("--report", spc.report, "write the report here instead of stdout");
  s->add_option("--tau", spc.tau, "damping time")->check(CLI::PositiveNumber);
  s->add_option("--omega-min", spc.omega_min, "grid start (default -pi/dt)");
  s->add_option("--omega-max", spc.omega_max, "grid end (default pi/dt)");
  s->add_option("--omega-points", spc.omega_points, "grid size");
  s->add_option("--positivity-tol", spc.positivity_tol,
                "positivity tolerance (default 1e-12 of the peak)");
  s->callback([&] { spc.run(); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    return app.exit(err);
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << '\n';
    return 1;
  }
  return 0;
}
