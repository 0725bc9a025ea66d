#include "spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "errors.hpp"
#include "fft.hpp"
#include "parallel.hpp"
#include "quadrature.hpp"

namespace plab {

namespace {
constexpr double kPi = std::numbers::pi;
}

void OperatorConfig::validate() const {
  if (!(D >= 2.0)) throw InvalidParameter("OperatorConfig: D must be >= 2");
  if (quad_order < 8.0 * D)
    throw InvalidParameter("OperatorConfig: quad_order must be >= 8*D");
  if (!(grid_rate >= 16.0))
    throw InvalidParameter("OperatorConfig: grid_rate must be >= 16");
}

int Spectrum::count_in(double lo, double hi) const {
  int n = 0;
  for (double l : lambdas)
    if (l > lo + 1e-12 && l < hi - 1e-12) ++n;
  return n;
}

double sinc_kernel(double x, double y) {
  double t = x - y;
  if (t == 0.0) return 1.0;
  double z = kPi * t;
  return std::sin(z) / z;
}

Eigen::MatrixXd build_nystrom(const OperatorConfig& config) {
  config.validate();
  const int n = config.quad_order;
  std::vector<double> x, w;
  gauss_legendre_on(n, -config.D / 2, config.D / 2, x, w);
  std::vector<double> sw(n);
  for (int i = 0; i < n; ++i) sw[i] = std::sqrt(w[i]);
  Eigen::MatrixXd M(n, n);
  parallel_for(n, [&](std::size_t r) {
    for (int c = 0; c < n; ++c)
      M(static_cast<int>(r), c) = sw[r] * sinc_kernel(x[r], x[c]) * sw[c];
  });
  // symmetrize away rounding asymmetry
  M = 0.5 * (M + M.transpose()).eval();
  return M;
}

NystromSystem::NystromSystem(const OperatorConfig& config) : config_(config) {
  config_.validate();
  gauss_legendre_on(config_.quad_order, -config_.D / 2, config_.D / 2, nodes_, weights_);
  matrix_ = build_nystrom(config_);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(matrix_);
  if (solver.info() != Eigen::Success)
    throw EigenFailure("NystromSystem: eigensolver did not converge");
  // Eigen returns ascending order; flip to non-increasing.
  const int n = config_.quad_order;
  eigvals_.resize(n);
  eigvecs_.resize(n, n);
  for (int i = 0; i < n; ++i) {
    eigvals_[i] = solver.eigenvalues()[n - 1 - i];
    eigvecs_.col(i) = solver.eigenvectors().col(n - 1 - i);
  }
}

Spectrum NystromSystem::spectrum() const {
  Spectrum s;
  s.D = config_.D;
  s.quad_order = config_.quad_order;
  s.lambdas.assign(eigvals_.data(), eigvals_.data() + eigvals_.size());
  double tr = 0.0, tr2 = 0.0;
  for (double l : s.lambdas) {
    tr += l;
    tr2 += l * l;
  }
  s.trace = tr;
  s.trace_sq = tr2;
  if (!s.lambdas.empty() &&
      (s.lambdas.front() > 1.0 + 1e-8 || s.lambdas.back() < -1e-8))
    throw EigenFailure("NystromSystem: spectrum escapes [0, 1]");
  return s;
}

double NystromSystem::eigenfunction(int r, double x) const {
  double lambda = eigvals_[r];
  if (lambda < 1e-10) throw InvalidParameter("eigenfunction: eigenvalue too small");
  // matrix eigvec v relates to function values by psi_b = v_b / sqrt(w_b)
  double s = 0.0;
  for (std::size_t b = 0; b < nodes_.size(); ++b)
    s += weights_[b] * sinc_kernel(x, nodes_[b]) * eigvecs_(b, r) / std::sqrt(weights_[b]);
  return s / lambda;
}

Spectrum eigen_spectrum(const OperatorConfig& config) {
  return NystromSystem(config).spectrum();
}

SampledFunction apply_T(const SampledFunction& f, const OperatorConfig& config) {
  config.validate();
  const std::size_t n = f.size();
  if (n == 0 || (n & (n - 1)) != 0)
    throw GridTooCoarse("apply_T: grid length must be a power of two");
  double hi_need = config.D / 2 + 8.0;
  if (f.x0 > -hi_need || f.coord(n - 1) < hi_need - f.dx)
    throw GridTooCoarse("apply_T: grid must cover [-D/2 - 8, D/2 + 8]");
  if (1.0 / f.dx < config.grid_rate - 1e-12)
    throw GridTooCoarse("apply_T: sample rate below grid_rate");

  double h = config.D / 2;
  SampledFunction g = f;
  for (std::size_t i = 0; i < n; ++i) {
    double x = g.coord(i);
    if (x < -h || x > h) g.values[i] = 0.0;
  }
  fft_inplace(g.values, false);
  double span = f.dx * static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    double fi = (i <= n / 2) ? static_cast<double>(i)
                             : static_cast<double>(i) - static_cast<double>(n);
    double xi = fi / span;
    double m = 0.0;
    double ax = std::abs(std::abs(xi) - 0.5);
    if (ax < 1e-12)
      m = 0.5;  // boundary bins get half weight
    else if (std::abs(xi) < 0.5)
      m = 1.0;
    g.values[i] *= m;
  }
  fft_inplace(g.values, true);
  for (std::size_t i = 0; i < n; ++i) {
    double x = g.coord(i);
    if (x < -h || x > h) g.values[i] = 0.0;
  }
  return g;
}

LandauReport landau_check(const Spectrum& spec) {
  LandauReport rep;
  rep.floor_d = static_cast<int>(std::floor(spec.D));
  int istar = 0;
  for (double l : spec.lambdas)
    if (l >= 0.5) ++istar;
  rep.index_half = istar;
  rep.pass = (istar == rep.floor_d) || (istar == rep.floor_d + 1);
  if (istar == rep.floor_d)
    rep.orientation = "standard";
  else if (istar == rep.floor_d + 1)
    rep.orientation = "shifted+1";
  else if (istar == rep.floor_d - 1) {
    rep.orientation = "literal";
    rep.pass = true;  // 1/2 still separates eigenvalues adjacent to [D]
  } else
    rep.orientation = "none";
  return rep;
}

}  // namespace plab
