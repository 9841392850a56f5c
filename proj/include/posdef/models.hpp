#pragma once

#include <array>
#include <cstdint>

#include "posdef/poles.hpp"

namespace posdef {

// Two-site Hubbard model at inverse temperature beta; the measured function
// is the greater Green's function G(t) = <c(t) c^dag> of one spin-orbital
// (all four are degenerate), without the customary -i prefactor.
struct DimerSpec {
  double U = 5.0;
  double eps = 2.3;
  double v = 1.0;     // inter-site hopping
  double beta = 10.0;
  int orbital = 0;    // measured spin-orbital: site0 up, site1 up, site0 dn, site1 dn
};

enum class SSHConvention { main_text, supplement };

// Tight-binding ring with alternating bond strengths. main_text modulates
// hoppings as vnn*(1 + (-1)^i delta), supplement as vnn + (-1)^i delta/2.
struct SSHSpec {
  int n_sites = 8;    // even, >= 4
  double delta = 0.4;
  double mu = -3.0;
  double vnn = 1.0;
  double k = 1.5707963267948966;  // momentum, must be 2 pi m / n_sites
  SSHConvention convention = SSHConvention::main_text;
};

enum class NoiseTarget { real_only, both_parts };

struct NoiseSpec {
  double sigma = 0.0;
  std::uint64_t seed = 0;
  NoiseTarget target = NoiseTarget::both_parts;
};

SampledSignal dimer_greens(const DimerSpec& spec, double dt, int n_points);

// Fock-space building blocks (basis: occupation bitstrings over the four
// spin-orbitals). Exposed for verification of symmetries.
Eigen::MatrixXd dimer_hamiltonian(const DimerSpec& spec);
Eigen::MatrixXd dimer_annihilator(int orbital);

// Thermal per-spin-orbital occupation <n> = 1 - G(0).
double dimer_density(const DimerSpec& spec);

// Lehmann poles of G: frequencies E_n - E_m with Boltzmann-weighted
// transition strengths, aggregated per frequency. The independent oracle
// for what decompose_cf must recover.
PoleModel dimer_poles(const DimerSpec& spec, double dt, double weight_cut = 1e-12);

// G_k(t) = <0| c_k(t) c_k^dag |0> = sum_a |<a|k>|^2 e^{-i E_a t} on the
// filled-vacuum state. (The single-particle greater function; the occupied
// counterpart <c_k^dag(t) c_k> vanishes on the vacuum.)
SampledSignal ssh_greens(const SSHSpec& spec, double dt, int n_points);

// Bloch closed form for the two band energies at momentum k:
// -mu -+ |t_even + t_odd e^{2ik}|.
std::array<double, 2> ssh_band_frequencies(const SSHSpec& spec);

// i.i.d. Gaussian(0, sigma) per selected part, mt19937_64 stream, real part
// drawn before imaginary at each sample.
SampledSignal add_noise(const SampledSignal& s, const NoiseSpec& noise);

}  // namespace posdef
