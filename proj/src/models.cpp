#include "posdef/models.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <random>

namespace posdef {

namespace {

// Fock space of two sites x two spins: 16 occupation states, orbital order
// [site0 up, site1 up, site0 down, site1 down], Jordan-Wigner signs from
// the parity of occupied orbitals below the acted-on one.
Eigen::MatrixXd annihilator(int p) {
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(16, 16);
  for (int s = 0; s < 16; ++s) {
    if (!(s & (1 << p))) continue;
    const int below = s & ((1 << p) - 1);
    const double sign = std::popcount(static_cast<unsigned>(below)) % 2 ? -1.0 : 1.0;
    c(s ^ (1 << p), s) = sign;
  }
  return c;
}

}  // namespace

Eigen::MatrixXd dimer_annihilator(int orbital) {
  if (orbital < 0 || orbital > 3)
    throw std::invalid_argument("dimer: orbital index must be 0..3");
  return annihilator(orbital);
}

Eigen::MatrixXd dimer_hamiltonian(const DimerSpec& spec) {
  std::array<Eigen::MatrixXd, 4> c;
  for (int p = 0; p < 4; ++p) c[p] = annihilator(p);
  std::array<Eigen::MatrixXd, 4> n;
  for (int p = 0; p < 4; ++p) n[p] = c[p].transpose() * c[p];

  Eigen::MatrixXd H = Eigen::MatrixXd::Zero(16, 16);
  for (int p = 0; p < 4; ++p) H -= spec.eps * n[p];
  for (int sigma = 0; sigma < 2; ++sigma) {
    const int a = 2 * sigma, b = 2 * sigma + 1;  // site0, site1 of this spin
    Eigen::MatrixXd hop = c[a].transpose() * c[b];
    H -= spec.v * (hop + hop.transpose());
  }
  // site interaction: orbitals (0,2) on site 0, (1,3) on site 1
  for (int site = 0; site < 2; ++site) {
    const auto& nu = n[site];
    const auto& nd = n[site + 2];
    H += spec.U * (nu * nd - 0.5 * (nu + nd));
  }
  return H;
}

namespace {

struct DimerED {
  Eigen::VectorXd E;
  Eigen::MatrixXd V;
  Eigen::VectorXd boltz;  // e^{-beta (E - E0)}
  double Z;

  explicit DimerED(const DimerSpec& spec) {
    if (spec.beta <= 0.0) throw std::invalid_argument("dimer: beta must be positive");
    if (spec.orbital < 0 || spec.orbital > 3)
      throw std::invalid_argument("dimer: orbital index must be 0..3");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dimer_hamiltonian(spec));
    if (es.info() != Eigen::Success)
      throw std::runtime_error("dimer: eigensolver failed");
    E = es.eigenvalues();
    V = es.eigenvectors();
    boltz = (-spec.beta * (E.array() - E(0))).exp();
    Z = boltz.sum();
  }
};

}  // namespace

SampledSignal dimer_greens(const DimerSpec& spec, double dt, int n_points) {
  if (n_points < 1) throw std::invalid_argument("dimer_greens: need at least one point");
  DimerED ed(spec);
  // G(t) = (1/Z) sum_{mn} e^{-beta E_m} |<n|c^dag|m>|^2 e^{-i (E_n - E_m) t}
  const Eigen::MatrixXd B = ed.V.transpose() * annihilator(spec.orbital).transpose() * ed.V;
  std::vector<cdouble> values(static_cast<std::size_t>(n_points), 0.0);
  for (int m = 0; m < 16; ++m) {
    if (ed.boltz(m) == 0.0) continue;
    for (int n = 0; n < 16; ++n) {
      const double w = ed.boltz(m) * B(n, m) * B(n, m) / ed.Z;
      if (w == 0.0) continue;
      const double omega = ed.E(n) - ed.E(m);
      const cdouble rot = std::polar(1.0, -omega * dt);
      cdouble ph = w;
      for (int j = 0; j < n_points; ++j) {
        values[static_cast<std::size_t>(j)] += ph;
        ph *= rot;
      }
    }
  }
  return SampledSignal(dt, std::move(values));
}

double dimer_density(const DimerSpec& spec) {
  DimerED ed(spec);
  const Eigen::MatrixXd c0 = annihilator(spec.orbital);
  const Eigen::MatrixXd n0 = c0.transpose() * c0;
  const Eigen::MatrixXd nrot = ed.V.transpose() * n0 * ed.V;
  double acc = 0.0;
  for (int m = 0; m < 16; ++m) acc += ed.boltz(m) * nrot(m, m);
  return acc / ed.Z;
}

PoleModel dimer_poles(const DimerSpec& spec, double dt, double weight_cut) {
  DimerED ed(spec);
  const Eigen::MatrixXd B = ed.V.transpose() * annihilator(spec.orbital).transpose() * ed.V;
  std::vector<std::pair<double, double>> raw;  // (omega, weight)
  for (int m = 0; m < 16; ++m)
    for (int n = 0; n < 16; ++n) {
      const double w = ed.boltz(m) * B(n, m) * B(n, m) / ed.Z;
      if (w > 0.0) raw.emplace_back(ed.E(n) - ed.E(m), w);
    }
  std::sort(raw.begin(), raw.end());

  PoleModel model;
  model.dt = dt;
  model.source_length = 0;
  for (auto& [omega, w] : raw) {
    if (!model.omega.empty() && omega - model.omega.back() <= 1e-9)
      model.weight.back() += w;
    else {
      model.omega.push_back(omega);
      model.weight.push_back(w);
    }
  }
  for (std::size_t i = model.omega.size(); i-- > 0;)
    if (model.weight[i] < weight_cut) {
      model.omega.erase(model.omega.begin() + static_cast<std::ptrdiff_t>(i));
      model.weight.erase(model.weight.begin() + static_cast<std::ptrdiff_t>(i));
    }
  return model;
}

namespace {

std::vector<double> ssh_hoppings(const SSHSpec& spec) {
  std::vector<double> t(static_cast<std::size_t>(spec.n_sites));
  for (int i = 0; i < spec.n_sites; ++i) {
    const double sign = i % 2 == 0 ? 1.0 : -1.0;
    t[static_cast<std::size_t>(i)] = spec.convention == SSHConvention::main_text
                                         ? spec.vnn * (1.0 + sign * spec.delta)
                                         : spec.vnn + sign * spec.delta / 2.0;
  }
  return t;
}

void validate_ssh(const SSHSpec& spec) {
  if (spec.n_sites < 4 || spec.n_sites % 2 != 0)
    throw std::invalid_argument("ssh: n_sites must be even and >= 4");
  if (std::abs(spec.delta) >= 2.0)
    throw std::invalid_argument("ssh: |delta| must be below 2");
  const double m = spec.k * spec.n_sites / (2.0 * std::numbers::pi);
  if (std::abs(m - std::round(m)) > 1e-9)
    throw std::invalid_argument("ssh: k must be commensurate, k = 2 pi m / n_sites");
}

}  // namespace

SampledSignal ssh_greens(const SSHSpec& spec, double dt, int n_points) {
  validate_ssh(spec);
  if (n_points < 1) throw std::invalid_argument("ssh_greens: need at least one point");
  const int n = spec.n_sites;
  const auto t = ssh_hoppings(spec);

  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    h(i, i) = -spec.mu;
    const int j = (i + 1) % n;
    h(i, j) = -t[static_cast<std::size_t>(i)];
    h(j, i) = -t[static_cast<std::size_t>(i)];
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
  if (es.info() != Eigen::Success) throw std::runtime_error("ssh: eigensolver failed");

  // overlap of each orbital with the plane wave |k>
  std::vector<double> wts(static_cast<std::size_t>(n));
  for (int a = 0; a < n; ++a) {
    cdouble ov = 0.0;
    for (int j = 0; j < n; ++j)
      ov += es.eigenvectors()(j, a) * std::polar(1.0 / std::sqrt(double(n)), spec.k * j);
    wts[static_cast<std::size_t>(a)] = std::norm(ov);
  }

  std::vector<cdouble> values(static_cast<std::size_t>(n_points), 0.0);
  for (int a = 0; a < n; ++a) {
    if (wts[static_cast<std::size_t>(a)] < 1e-300) continue;
    const cdouble rot = std::polar(1.0, -es.eigenvalues()(a) * dt);
    cdouble ph = wts[static_cast<std::size_t>(a)];
    for (int j = 0; j < n_points; ++j) {
      values[static_cast<std::size_t>(j)] += ph;
      ph *= rot;
    }
  }
  return SampledSignal(dt, std::move(values));
}

std::array<double, 2> ssh_band_frequencies(const SSHSpec& spec) {
  validate_ssh(spec);
  const auto t = ssh_hoppings(spec);
  const cdouble off = t[0] + t[1] * std::polar(1.0, 2.0 * spec.k);
  const double gap = std::abs(off);
  return {-spec.mu - gap, -spec.mu + gap};
}

SampledSignal add_noise(const SampledSignal& s, const NoiseSpec& noise) {
  if (noise.sigma < 0.0) throw std::invalid_argument("add_noise: sigma must be nonnegative");
  SampledSignal out = s;
  if (noise.sigma == 0.0) return out;
  std::mt19937_64 gen(noise.seed);
  std::normal_distribution<double> dist(0.0, noise.sigma);
  for (auto& v : out.values) {
    const double re = v.real() + dist(gen);
    const double im = noise.target == NoiseTarget::both_parts ? v.imag() + dist(gen)
                                                              : v.imag();
    v = cdouble(re, im);
  }
  return out;
}

}  // namespace posdef
