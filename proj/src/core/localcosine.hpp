#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <vector>

#include "cutoff.hpp"
#include "grid.hpp"
#include "whitney.hpp"

namespace plab {

/// Left/right transition widths of one interval's window.
struct TransitionWidths {
  double left = 0.0;
  double right = 0.0;
};

/// Width rule: at each shared interior endpoint both neighbors get
/// min(delta_left, delta_right) / 20; the outermost (truncated) endpoints get
/// a one-sided delta/20. Shared widths are what makes adjacent-interval atoms
/// orthogonal. Throws IncompatibleScales if adjacent lengths differ by more
/// than a factor of 4.
std::vector<TransitionWidths> select_transition_widths(const WhitneyDecomposition& decomp);

struct BasisAtom {
  int j = 0;        // interval id
  int k = 0;        // cosine index
  double c_norm = 0.0;  // normalization constant C_{jk}
  double xi = 0.0;      // frequency center (2k+1)/(4 delta_j)
};

struct GramStats {
  double max_offdiag = 0.0;
  double max_diag_dev = 0.0;
};

/// Quadrature of integrand(x) over [lo, hi] with panels split at the given
/// breakpoints and capped at max_len; panel count is doubled once as a
/// convergence check. Throws QuadratureFailure if the two levels disagree.
double checked_panel_integral(const std::function<double(double)>& integrand, double lo,
                              double hi, const std::vector<double>& breakpoints,
                              double max_len, int nodes_per_panel = 16);

/// C from the defining integral: sqrt(delta / integral). With an ideal flat
/// window the integral is delta/2 and C = sqrt(2).
double normalization_from_integral(double delta, double integral);

/// Orthonormal local cosine basis over a Whitney decomposition:
///   Phi_{jk}(x) = C_jk delta_j^{-1/2} theta_j(x) cos(pi (k+1/2) (x-x_j)/delta_j)
/// with one atom family per interval, truncated at k_count(j) = the number of
/// frequency centers below the analysis band xi_max (at least one per
/// interval). All evaluation paths are pure after construction.
class Basis {
 public:
  Basis(WhitneyDecomposition decomp, CutoffSpec cutoff, double xi_max = 4.0);

  const WhitneyDecomposition& decomposition() const { return decomp_; }
  const std::vector<TransitionWidths>& widths() const { return widths_; }
  const CutoffSpec& cutoff() const { return cutoff_; }
  double xi_max() const { return xi_max_; }
  const std::vector<BasisAtom>& atoms() const { return atoms_; }
  int atom_count() const { return static_cast<int>(atoms_.size()); }
  int k_count(int j) const;

  /// Window theta_j = theta((x-x_j)/eta_l) * theta((x_j+delta-x)/eta_r).
  double window(int j, double x) const;
  double support_lo(int j) const;
  double support_hi(int j) const;

  double atom_value(int idx, double x) const;
  SampledFunction sample_atom(int idx, double x0, double dx, std::size_t n) const;

  /// Continuous Fourier transform at a single frequency, by oscillation-aware
  /// panel quadrature over the atom support.
  std::complex<double> atom_fourier(int idx, double xi) const;

  /// Padded-DFT spectrum with a physical frequency axis (ascending).
  /// grid_pts must be a power of two; pad >= 4. Throws GridTooCoarse when the
  /// implied sample spacing cannot resolve the window transitions or the
  /// cosine frequency.
  SampledFunction atom_spectrum(int idx, int grid_pts, int pad) const;

  /// Energy of the atom spectrum inside J = [-1/2, 1/2].
  double in_band_energy(int idx) const;
  double out_band_energy(int idx) const { return 1.0 - in_band_energy(idx); }

  /// ||R_I P_J Phi||^2 via the frequency-side quadrature
  /// sum_{q,q'} w_q w_q' Phi_hat(xi_q) conj(Phi_hat(xi_q')) D sinc(D (xi_q - xi_q')).
  double tphi_norm_sq(int idx) const;

  /// Pairwise inner products by panel quadrature; grid_rate is the effective
  /// node density per unit length and must be >= 8x the highest frequency
  /// center among the selected atoms (GridTooCoarse otherwise). Empty index
  /// list selects all atoms.
  Eigen::MatrixXd gram_matrix(const std::vector<int>& indices, double grid_rate) const;
  static GramStats gram_stats(const Eigen::MatrixXd& gram);

  /// Test hook: scales one atom's normalization constant.
  void corrupt_normalization(int idx, double factor);

 private:
  struct OscRep {
    std::vector<double> nodes;
    std::vector<double> weighted_values;  // w_q * Phi(x_q)
  };

  double pair_inner(int a, int b, double grid_rate) const;
  void build_osc_rep(int idx);

  WhitneyDecomposition decomp_;
  CutoffSpec cutoff_;
  double xi_max_;
  std::vector<TransitionWidths> widths_;
  std::vector<BasisAtom> atoms_;
  std::vector<int> k_offset_;  // first atom index per interval
  std::vector<OscRep> osc_;
};

/// Simpson integration of |values|^2 over [lo, hi] on the uniform frequency
/// grid, with cubic interpolation at the endpoints.
double band_energy(const SampledFunction& freq, double lo, double hi);

}  // namespace plab
