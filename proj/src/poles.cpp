#include "posdef/poles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace posdef {

namespace {

constexpr double kPi = std::numbers::pi;

void require_psd(const Eigen::VectorXd& lam, double f0, const char* who) {
  if (lam(0) < -Tol::psd(std::max(f0, 1.0)))
    throw std::invalid_argument(std::string(who) + ": Gramian is not PSD, denoise first");
}

// fold into the Nyquist window (-pi/dt, pi/dt]
double fold(double omega, double dt) {
  const double period = 2.0 * kPi / dt;
  omega = std::fmod(omega, period);
  if (omega <= -kPi / dt) omega += period;
  if (omega > kPi / dt) omega -= period;
  return omega;
}

}  // namespace

int estimate_rank(const HermitianToeplitz& T, double singular_tol) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(dense(T), Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("estimate_rank: eigensolver failed");
  const auto& lam = es.eigenvalues();
  require_psd(lam, T.f0(), "estimate_rank");
  const double lmax = lam(lam.size() - 1);
  int r = 0;
  for (Eigen::Index i = 0; i < lam.size(); ++i)
    if (lam(i) > singular_tol * lmax) ++r;
  return r;
}

Eigen::VectorXd nnls(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, int max_iter) {
  const Eigen::Index ncol = A.cols();
  Eigen::VectorXd x = Eigen::VectorXd::Zero(ncol);
  std::vector<bool> passive(ncol, false);
  Eigen::VectorXd w = A.transpose() * b;
  const double tol = 1e-12 * std::max(1.0, w.cwiseAbs().maxCoeff());

  auto solve_passive = [&](void) -> Eigen::VectorXd {
    std::vector<Eigen::Index> idx;
    for (Eigen::Index i = 0; i < ncol; ++i)
      if (passive[i]) idx.push_back(i);
    Eigen::MatrixXd Ap(A.rows(), static_cast<Eigen::Index>(idx.size()));
    for (std::size_t c = 0; c < idx.size(); ++c) Ap.col(c) = A.col(idx[c]);
    Eigen::VectorXd zp = Ap.colPivHouseholderQr().solve(b);
    Eigen::VectorXd z = Eigen::VectorXd::Zero(ncol);
    for (std::size_t c = 0; c < idx.size(); ++c) z(idx[c]) = zp(c);
    return z;
  };

  for (int outer = 0; outer < max_iter; ++outer) {
    w = A.transpose() * (b - A * x);
    Eigen::Index jbest = -1;
    double wbest = tol;
    for (Eigen::Index i = 0; i < ncol; ++i)
      if (!passive[i] && w(i) > wbest) {
        wbest = w(i);
        jbest = i;
      }
    if (jbest < 0) break;
    passive[jbest] = true;

    for (int inner = 0; inner < max_iter; ++inner) {
      Eigen::VectorXd z = solve_passive();
      bool all_pos = true;
      for (Eigen::Index i = 0; i < ncol; ++i)
        if (passive[i] && z(i) <= 0.0) all_pos = false;
      if (all_pos) {
        x = z;
        break;
      }
      double alpha = 1.0;
      for (Eigen::Index i = 0; i < ncol; ++i)
        if (passive[i] && z(i) <= 0.0)
          alpha = std::min(alpha, x(i) / (x(i) - z(i)));
      x += alpha * (z - x);
      for (Eigen::Index i = 0; i < ncol; ++i)
        if (passive[i] && x(i) <= 1e-14 * std::abs(alpha)) {
          x(i) = 0.0;
          passive[i] = false;
        }
    }
  }
  return x;
}

std::vector<double> music_frequencies(const HermitianToeplitz& T, int r, double dt,
                                      int grid_points) {
  const auto n = static_cast<Eigen::Index>(T.size());
  if (r < 1 || r >= n)
    throw std::invalid_argument("music_frequencies: need 1 <= r <= n-1");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(dense(T));
  if (es.info() != Eigen::Success)
    throw std::runtime_error("music_frequencies: eigensolver failed");
  const Eigen::MatrixXcd noise = es.eigenvectors().leftCols(n - r);

  // pseudospectrum 1 / |noise^H a(w)|^2 with steering a(w)_j = e^{i w j dt}
  const double dw = 2.0 * kPi / dt / grid_points;
  std::vector<double> logp(grid_points);
  Eigen::VectorXcd a(n);
  for (int gidx = 0; gidx < grid_points; ++gidx) {
    const double w = -kPi / dt + (gidx + 1) * dw;
    const cdouble rot = std::polar(1.0, w * dt);
    cdouble ph = 1.0;
    for (Eigen::Index j = 0; j < n; ++j) {
      a(j) = ph;
      ph *= rot;
    }
    const double den = (noise.adjoint() * a).squaredNorm();
    logp[gidx] = -std::log(std::max(den, 1e-300));
  }

  // circular local maxima, tallest r, refined by parabolic interpolation
  std::vector<std::pair<double, int>> peaks;
  for (int gidx = 0; gidx < grid_points; ++gidx) {
    const double prev = logp[(gidx + grid_points - 1) % grid_points];
    const double next = logp[(gidx + 1) % grid_points];
    if (logp[gidx] > prev && logp[gidx] >= next) peaks.emplace_back(logp[gidx], gidx);
  }
  std::sort(peaks.rbegin(), peaks.rend());
  if (static_cast<int>(peaks.size()) > r) peaks.resize(r);

  std::vector<double> freqs;
  for (auto [height, gidx] : peaks) {
    const double pm = logp[(gidx + grid_points - 1) % grid_points];
    const double pp = logp[(gidx + 1) % grid_points];
    double shift = 0.0;
    const double denom = pm - 2.0 * height + pp;
    if (denom < 0.0) shift = std::clamp(0.5 * (pm - pp) / denom, -0.5, 0.5);
    freqs.push_back(fold(-kPi / dt + (gidx + 1 + shift) * dw, dt));
  }
  std::sort(freqs.begin(), freqs.end());
  return freqs;
}

namespace {

// roots of the noise polynomial of an exactly rank-r Toeplitz matrix: the
// null vector of the (r+1)-point leading submatrix, rooted via its
// companion matrix
std::vector<double> pisarenko_frequencies(const HermitianToeplitz& T, int r, double dt) {
  Eigen::MatrixXcd sub(r + 1, r + 1);
  for (int i = 0; i <= r; ++i)
    for (int j = 0; j <= r; ++j)
      sub(i, j) = j >= i ? T.first_row[j - i] : std::conj(T.first_row[i - j]);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(sub);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("decompose_cf: eigensolver failed on leading submatrix");
  const Eigen::VectorXcd u = es.eigenvectors().col(0);  // null direction

  if (std::abs(u(r)) < 1e-12 * u.norm())
    throw std::runtime_error(
        "decompose_cf: degenerate null polynomial (leading coefficient ~ 0); "
        "the input may not have exact rank r");

  if (r == 1) {
    const cdouble z = -u(0) / u(1);
    return {fold(-std::arg(z) / dt, dt)};
  }
  Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(r, r);
  for (int i = 1; i < r; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < r; ++i) comp(i, r - 1) = -u(i) / u(r);
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> ces(comp, false);
  if (ces.info() != Eigen::Success)
    throw std::runtime_error("decompose_cf: companion-matrix rooting failed");

  std::vector<double> freqs;
  for (int i = 0; i < r; ++i)
    freqs.push_back(fold(-std::arg(ces.eigenvalues()(i)) / dt, dt));
  std::sort(freqs.begin(), freqs.end());
  return freqs;
}

}  // namespace

PoleModel decompose_cf(const HermitianToeplitz& T, int r, double dt, int grid_points) {
  const auto n = static_cast<Eigen::Index>(T.size());
  if (r < 1) throw std::invalid_argument("decompose_cf: rank must be positive");
  if (r > n - 1)
    throw std::invalid_argument("decompose_cf: rank must leave a noise subspace (r <= n-1)");
  if (dt <= 0.0) throw std::invalid_argument("decompose_cf: dt must be positive");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(dense(T), Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("decompose_cf: eigensolver failed");
  const auto& lam = es.eigenvalues();
  require_psd(lam, T.f0(), "decompose_cf");

  // exact rank-r structure: largest residual eigenvalue is negligible
  const double lmax = lam(n - 1);
  const bool exact = lam(n - 1 - r) <= Tol::cf * std::max(lmax, 0.0);

  std::vector<double> freqs =
      exact ? pisarenko_frequencies(T, r, dt) : music_frequencies(T, r, dt, grid_points);
  if (freqs.empty()) throw std::runtime_error("decompose_cf: no frequencies located");

  // weights: nonnegative least squares of the first row against the
  // oscillation vectors, real and imaginary parts stacked
  const auto m = static_cast<Eigen::Index>(freqs.size());
  Eigen::MatrixXd A(2 * n, m);
  Eigen::VectorXd b(2 * n);
  for (Eigen::Index j = 0; j < n; ++j) {
    b(j) = T.first_row[j].real();
    b(n + j) = T.first_row[j].imag();
    for (Eigen::Index c = 0; c < m; ++c) {
      const cdouble e = std::polar(1.0, -freqs[c] * double(j) * dt);
      A(j, c) = e.real();
      A(n + j, c) = e.imag();
    }
  }
  const Eigen::VectorXd wts = nnls(A, b);

  PoleModel model;
  model.dt = dt;
  model.source_length = static_cast<int>(n);
  for (Eigen::Index c = 0; c < m; ++c)
    if (wts(c) > 0.0) {
      model.omega.push_back(freqs[c]);
      model.weight.push_back(wts(c));
    }
  if (model.omega.empty())
    throw std::runtime_error("decompose_cf: all pole weights vanished");
  return model;
}

SampledSignal extrapolate(const PoleModel& model, int n_total) {
  if (model.omega.empty()) throw std::invalid_argument("extrapolate: empty model");
  if (n_total < 1) throw std::invalid_argument("extrapolate: n_total must be positive");
  std::vector<cdouble> values(static_cast<std::size_t>(n_total), 0.0);
  for (std::size_t r = 0; r < model.omega.size(); ++r) {
    const cdouble rot = std::polar(1.0, -model.omega[r] * model.dt);
    cdouble ph = model.weight[r];
    for (int j = 0; j < n_total; ++j) {
      values[static_cast<std::size_t>(j)] += ph;
      ph *= rot;
    }
  }
  return SampledSignal(model.dt, std::move(values));
}

}  // namespace posdef
