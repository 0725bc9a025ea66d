#pragma once

#include <vector>

namespace plab {

/// Bump factor a(x) = exp(-(1-x)^-m) * exp(-(x+1)^-m) on (-1,1), 0 outside.
/// Total function; underflow flushes to 0.
double eval_a(double x, int m);

/// Smooth cutoff rising from 0 to 1 across [-1, 1], built as theta = sin(A)
/// where A is the normalized antiderivative of the bump a. Construction
/// integrates a once and caches A on a dense grid over [-1, 0] (monotone
/// cubic Hermite); the right half follows from the reflection identity
/// A(x) + A(-x) = pi/2, which makes theta^2(x) + theta^2(-x) = 1 hold to
/// machine precision. Immutable after construction; safe to share across
/// threads.
class CutoffSpec {
 public:
  explicit CutoffSpec(int m = 4, double quad_tol = 1e-12, int cache_points = 16385);

  int m() const { return m_; }
  double eta() const { return 1.0 / m_; }  // effective smoothness parameter
  double quad_tol() const { return quad_tol_; }
  double norm_const() const { return norm_const_; }  // integral of a over R

  double eval_a(double x) const;
  double eval_A(double x) const;      // in [0, pi/2], monotone non-decreasing
  double eval_theta(double x) const;  // 0 for x <= -1, 1 for x >= 1

 private:
  double eval_half(double x) const;  // A on [-1, 0] from the Hermite cache

  int m_;
  double quad_tol_;
  double norm_const_;
  double x0_, dx_;
  std::vector<double> val_;    // A at cache nodes
  std::vector<double> slope_;  // A' at cache nodes (limited for monotonicity)
};

struct PartitionOfUnityReport {
  double max_deviation;
  bool pass;
};

/// Max of |theta^2(x) + theta^2(-x) - 1| over the grid, compared to tol.
PartitionOfUnityReport verify_partition_of_unity(const CutoffSpec& spec,
                                                 const std::vector<double>& grid,
                                                 double tol);

/// Result of fitting |F(f)(xi)| ~ amplitude * exp(-rate * |xi|^exponent).
struct DecayFit {
  double amplitude = 0.0;
  double rate = 0.0;
  double exponent = 0.0;
  double decades = 0.0;  // decades of |F| spanned by the fit window
  int points_used = 0;
};

/// Fits a stretched-exponential envelope to the transform magnitude of the
/// given real samples (spacing dx). The fit window keeps magnitudes in
/// [10 x noise floor, 1e-2 x max]; the envelope is the block maximum over
/// log-spaced frequency bins. Throws FitFailure with fewer than 16 usable
/// frequency samples.
DecayFit fit_spectral_decay(const std::vector<double>& samples, double dx);

/// Transform-decay of the cutoff, measured on the compactly supported
/// two-sided profile theta(x) * theta(-x) sampled on [-pad_factor, pad_factor).
/// grid_pts must be a power of two >= 4096 and pad_factor >= 4.
DecayFit estimate_fourier_decay(const CutoffSpec& spec, int grid_pts, int pad_factor);

/// Envelope fit for the unit-interval window profile
///   p(u) = theta(u/omega_left) * theta((1-u)/omega_right),
/// inflated so that the returned model majorizes |p_hat| over the fit window
/// (slack > 1 adds headroom). Used to bound atom spectra after rescaling.
DecayFit fit_window_envelope(const CutoffSpec& spec, double omega_left,
                             double omega_right, double slack = 1.2,
                             int grid_pts = 1 << 17);

struct DerivativeGrowthReport {
  std::vector<double> max_abs;  // max |D^k theta|, k = 1..k_max
  std::vector<double> c_k;      // (max_abs / k^{(1+eta)k})^{1/k}
  double c_required = 0.0;      // smallest C valid for all k <= k_max
  double worst_rel_diff = 0.0;  // grid-refinement disagreement
  bool stable = false;
};

/// Computes D^k theta for k = 1..k_max by spectral differentiation of theta'
/// (coefficients below the noise floor are zeroed before multiplying by the
/// frequency powers). Runs two grid resolutions; throws InstabilityError if
/// they disagree by more than 10% in any max |D^k theta|.
DerivativeGrowthReport verify_derivative_growth(const CutoffSpec& spec, int k_max);

}  // namespace plab
