#include "cutoff.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "errors.hpp"
#include "fft.hpp"
#include "quadrature.hpp"

namespace plab {

namespace {
constexpr double kPi = std::numbers::pi;
}

double eval_a(double x, int m) {
  if (x <= -1.0 || x >= 1.0) return 0.0;
  double e = std::pow(1.0 - x, -m) + std::pow(1.0 + x, -m);
  return std::exp(-e);
}

CutoffSpec::CutoffSpec(int m, double quad_tol, int cache_points)
    : m_(m), quad_tol_(quad_tol) {
  if (m < 1) throw InvalidParameter("CutoffSpec: m must be >= 1");
  if (!(quad_tol > 0)) throw InvalidParameter("CutoffSpec: quad_tol must be > 0");
  if (cache_points < 129) throw InvalidParameter("CutoffSpec: cache too small");

  const int n = cache_points;
  x0_ = -1.0;
  dx_ = 1.0 / (n - 1);
  val_.assign(n, 0.0);
  slope_.assign(n, 0.0);

  // Cumulative integral of a over [-1, 0], panel by panel. Fixed-order
  // Gauss on 1/(n-1)-wide smooth panels is already at machine precision;
  // one adaptive evaluation cross-checks the total against quad_tol.
  std::vector<double> cum(n, 0.0);
  auto af = [this](double y) { return plab::eval_a(y, m_); };
  for (int i = 1; i < n; ++i) {
    double a = x0_ + (i - 1) * dx_;
    double b = x0_ + i * dx_;
    cum[i] = cum[i - 1] + integrate_gl(af, a, b, 16);
  }
  double half = cum[n - 1];  // integral over [-1, 0]
  if (!(half > 0.0) || !std::isfinite(half))
    throw QuadratureFailure("CutoffSpec: degenerate bump integral");
  double check = integrate_adaptive(af, -1.0, 0.0, quad_tol_);
  if (std::abs(check - half) > quad_tol_ * std::max(1.0, half) * 10)
    throw QuadratureFailure("CutoffSpec: antiderivative cache disagrees with quadrature");
  norm_const_ = 2.0 * half;  // a is even
  if (norm_const_ > 4.0)
    throw InvalidParameter("CutoffSpec: bump integral out of range");

  double scale = kPi / (2.0 * norm_const_);
  for (int i = 0; i < n; ++i) {
    val_[i] = cum[i] * scale;
    slope_[i] = scale * plab::eval_a(x0_ + i * dx_, m_);
  }
  // Monotone limiting (Fritsch-Carlson style): keep each nodal slope within
  // [0, 3*secant] of its neighboring panels. With exact slopes this only
  // matters in the flat underflow region near x = -1.
  for (int i = 0; i < n; ++i) {
    double left = (i > 0) ? (val_[i] - val_[i - 1]) / dx_ : slope_[i];
    double right = (i + 1 < n) ? (val_[i + 1] - val_[i]) / dx_ : slope_[i];
    double cap = 3.0 * std::min(left, right);
    if (slope_[i] > cap) slope_[i] = std::max(cap, 0.0);
  }
}

double CutoffSpec::eval_a(double x) const { return plab::eval_a(x, m_); }

double CutoffSpec::eval_half(double x) const {
  // x in [-1, 0]
  double t = (x - x0_) / dx_;
  int i = static_cast<int>(t);
  int last = static_cast<int>(val_.size()) - 2;
  if (i < 0) i = 0;
  if (i > last) i = last;
  double u = t - i;  // in [0, 1]
  double h = dx_;
  double y0 = val_[i], y1 = val_[i + 1];
  double d0 = slope_[i] * h, d1 = slope_[i + 1] * h;
  double u2 = u * u, u3 = u2 * u;
  return (2 * u3 - 3 * u2 + 1) * y0 + (u3 - 2 * u2 + u) * d0 +
         (-2 * u3 + 3 * u2) * y1 + (u3 - u2) * d1;
}

double CutoffSpec::eval_A(double x) const {
  if (x <= -1.0) return 0.0;
  if (x >= 1.0) return kPi / 2;
  if (x <= 0.0) return eval_half(x);
  return kPi / 2 - eval_half(-x);  // A(x) + A(-x) = pi/2, a is even
}

double CutoffSpec::eval_theta(double x) const {
  if (x <= -1.0) return 0.0;
  if (x >= 1.0) return 1.0;
  return std::sin(eval_A(x));
}

PartitionOfUnityReport verify_partition_of_unity(const CutoffSpec& spec,
                                                 const std::vector<double>& grid,
                                                 double tol) {
  double worst = 0.0;
  for (double x : grid) {
    double tp = spec.eval_theta(x);
    double tm = spec.eval_theta(-x);
    worst = std::max(worst, std::abs(tp * tp + tm * tm - 1.0));
  }
  return {worst, worst <= tol};
}

namespace {

struct EnvelopePoint {
  double xi;
  double log_mag;
};

DecayFit fit_envelope(const std::vector<double>& xi, const std::vector<double>& mag) {
  double mx = 0.0;
  for (double m : mag) mx = std::max(mx, m);
  if (!(mx > 0.0)) throw FitFailure("spectral decay fit: zero spectrum");

  // Noise floor: median magnitude over the top decile of the frequency range.
  std::size_t n = mag.size();
  std::vector<double> tail(mag.begin() + static_cast<std::ptrdiff_t>(0.9 * n), mag.end());
  std::sort(tail.begin(), tail.end());
  double noise = tail.empty() ? 0.0 : tail[tail.size() / 2];
  noise = std::max(noise, 1e-17 * mx);

  double lo = 10.0 * noise, hi = 1e-2 * mx;

  // Work on the contiguous decay range only: block maxima bridge the nulls of
  // oscillatory spectra, and the scan stops at the first block that falls
  // below the floor so stray tail-noise bins cannot distort the fit.
  std::size_t block = std::max<std::size_t>(8, n / 512);
  std::size_t i_begin = n, i_end = 0;
  bool started = false;
  for (std::size_t j = 0; j * block < n; ++j) {
    double m = 0.0;
    for (std::size_t i = j * block; i < std::min(n, (j + 1) * block); ++i)
      m = std::max(m, mag[i]);
    if (!started) {
      if (m < hi && m > lo) {
        started = true;
        i_begin = j * block;
      }
      continue;
    }
    if (m <= lo) {
      i_end = j * block;
      break;
    }
    i_end = std::min(n, (j + 1) * block);
  }
  std::vector<double> sx, sm;
  for (std::size_t i = std::max<std::size_t>(i_begin, 1); i < i_end; ++i) {
    if (mag[i] > lo && mag[i] < hi) {
      sx.push_back(xi[i]);
      sm.push_back(mag[i]);
    }
  }
  if (sx.size() < 16) throw FitFailure("spectral decay fit: too few usable samples");

  // Upper envelope: block maximum over log-spaced frequency bins.
  const int nbins = 60;
  double xmin = *std::min_element(sx.begin(), sx.end());
  double xmax = *std::max_element(sx.begin(), sx.end());
  std::vector<EnvelopePoint> env;
  double lr = std::log(xmax / xmin);
  for (int b = 0; b < nbins; ++b) {
    double e0 = xmin * std::exp(lr * b / nbins);
    double e1 = xmin * std::exp(lr * (b + 1) / nbins);
    double best = -1.0, bx = 0.0;
    for (std::size_t i = 0; i < sx.size(); ++i) {
      if (sx[i] >= e0 && sx[i] < e1 && sm[i] > best) {
        best = sm[i];
        bx = sx[i];
      }
    }
    if (best > 0) env.push_back({bx, std::log(best)});
  }
  if (env.size() < 8) throw FitFailure("spectral decay fit: envelope too sparse");

  // Scan the exponent; (log A, rate) by linear least squares at each p.
  DecayFit fit;
  double best_sse = 0.0;
  bool first = true;
  for (int step = 0; step <= 400; ++step) {
    double p = 0.05 + (3.0 - 0.05) * step / 400.0;
    double s11 = 0, s1b = 0, sbb = 0, s1y = 0, sby = 0;
    for (const auto& e : env) {
      double b = -std::pow(e.xi, p);
      s11 += 1;
      s1b += b;
      sbb += b * b;
      s1y += e.log_mag;
      sby += b * e.log_mag;
    }
    double det = s11 * sbb - s1b * s1b;
    if (std::abs(det) < 1e-30) continue;
    double logA = (s1y * sbb - sby * s1b) / det;
    double rate = (s11 * sby - s1b * s1y) / det;
    double sse = 0.0;
    for (const auto& e : env) {
      double r = e.log_mag - (logA - rate * std::pow(e.xi, p));
      sse += r * r;
    }
    if (first || sse < best_sse) {
      first = false;
      best_sse = sse;
      fit.amplitude = std::exp(logA);
      fit.rate = rate;
      fit.exponent = p;
    }
  }
  fit.decades = std::log10(hi / lo);
  fit.points_used = static_cast<int>(env.size());
  return fit;
}

}  // namespace

DecayFit fit_spectral_decay(const std::vector<double>& samples, double dx) {
  if (samples.size() < 1024) throw InvalidParameter("fit_spectral_decay: too few samples");
  auto spec = fft_real(samples);
  std::size_t half = samples.size() / 2;
  std::vector<double> xi(half), mag(half);
  double span = dx * static_cast<double>(samples.size());
  for (std::size_t i = 0; i < half; ++i) {
    xi[i] = static_cast<double>(i) / span;
    mag[i] = std::abs(spec[i]) * dx;
  }
  return fit_envelope(xi, mag);
}

DecayFit estimate_fourier_decay(const CutoffSpec& spec, int grid_pts, int pad_factor) {
  if (grid_pts < 4096 || (grid_pts & (grid_pts - 1)) != 0)
    throw InvalidParameter("estimate_fourier_decay: grid_pts must be a power of two >= 4096");
  if (pad_factor < 4) throw InvalidParameter("estimate_fourier_decay: pad_factor must be >= 4");
  double span = 2.0 * pad_factor;
  double dx = span / grid_pts;
  std::vector<double> samples(grid_pts);
  for (int i = 0; i < grid_pts; ++i) {
    double x = -pad_factor + (i + 0.5) * dx;
    samples[i] = spec.eval_theta(x) * spec.eval_theta(-x);
  }
  return fit_spectral_decay(samples, dx);
}

DecayFit fit_window_envelope(const CutoffSpec& spec, double omega_left,
                             double omega_right, double slack, int grid_pts) {
  if (!(omega_left > 0) || !(omega_right > 0) || !(slack >= 1.0))
    throw InvalidParameter("fit_window_envelope: bad parameters");
  double span = 32.0;
  double dx = span / grid_pts;
  std::vector<double> samples(grid_pts);
  for (int i = 0; i < grid_pts; ++i) {
    double u = -span / 2 + (i + 0.5) * dx;
    samples[i] = spec.eval_theta(u / omega_left) * spec.eval_theta((1.0 - u) / omega_right);
  }
  DecayFit fit = fit_spectral_decay(samples, dx);

  // Inflate the amplitude so the model majorizes the measured magnitudes on
  // the fit window.
  auto sp = fft_real(samples);
  std::size_t half = samples.size() / 2;
  double mx = 0.0;
  for (std::size_t i = 0; i < half; ++i) mx = std::max(mx, std::abs(sp[i]) * dx);
  double ratio = 1.0;
  for (std::size_t i = 1; i < half; ++i) {
    double mag = std::abs(sp[i]) * dx;
    if (mag < 1e-15 * mx) continue;
    double xi = static_cast<double>(i) / span;
    double model = fit.amplitude * std::exp(-fit.rate * std::pow(xi, fit.exponent));
    if (model > 0) ratio = std::max(ratio, mag / model);
  }
  fit.amplitude *= ratio * slack;
  return fit;
}

DerivativeGrowthReport verify_derivative_growth(const CutoffSpec& spec, int k_max) {
  if (k_max < 1 || k_max > 10)
    throw InvalidParameter("verify_derivative_growth: k_max must be in [1, 10]");

  auto run = [&](int nexp) {
    const std::size_t n = std::size_t{1} << nexp;
    const double span = 8.0;
    const double dx = span / static_cast<double>(n);
    double dscale = kPi / (2.0 * spec.norm_const());
    std::vector<std::complex<double>> coef(n);
    for (std::size_t i = 0; i < n; ++i) {
      double x = -span / 2 + static_cast<double>(i) * dx;
      // theta' = cos(A) * A', compactly supported in [-1, 1]
      coef[i] = std::cos(spec.eval_A(x)) * dscale * spec.eval_a(x);
    }
    fft_inplace(coef, false);
    double cmax = 0.0;
    for (const auto& z : coef) cmax = std::max(cmax, std::abs(z));
    for (auto& z : coef)
      if (std::abs(z) < 1e-13 * cmax) z = 0.0;

    std::vector<double> maxes(k_max);
    std::vector<std::complex<double>> work(n);
    for (int k = 1; k <= k_max; ++k) {
      for (std::size_t i = 0; i < n; ++i) {
        double fi = (i <= n / 2) ? static_cast<double>(i)
                                 : static_cast<double>(i) - static_cast<double>(n);
        double xi = fi / span;
        work[i] = coef[i] * std::pow(std::complex<double>(0.0, 2.0 * kPi * xi), k - 1);
      }
      fft_inplace(work, true);
      double mx = 0.0;
      for (const auto& z : work) mx = std::max(mx, std::abs(z.real()));
      maxes[k - 1] = mx;
    }
    return maxes;
  };

  auto coarse = run(13);
  auto fine = run(14);

  DerivativeGrowthReport rep;
  rep.max_abs = fine;
  rep.c_k.resize(k_max);
  double eta = spec.eta();
  double worst = 0.0;
  for (int k = 1; k <= k_max; ++k) {
    double rel = std::abs(coarse[k - 1] - fine[k - 1]) / std::max(fine[k - 1], 1e-300);
    worst = std::max(worst, rel);
    rep.c_k[k - 1] = std::pow(fine[k - 1] / std::pow(k, (1.0 + eta) * k), 1.0 / k);
    rep.c_required = std::max(rep.c_required, rep.c_k[k - 1]);
  }
  rep.worst_rel_diff = worst;
  rep.stable = worst <= 0.10;
  if (!rep.stable)
    throw InstabilityError("verify_derivative_growth: grid refinement disagreement");
  return rep;
}

}  // namespace plab
