#pragma once

#include <vector>

#include "calibration.hpp"
#include "localcosine.hpp"

namespace plab {

struct PartitionParams {
  double s = 1.0;
  double delta_min = 0.5;
  double epsilon = 0.1;
  double eta = 0.25;
  CalibrationConstants constants{};

  void validate() const;  // s >= 1, delta_min in (0,1), epsilon in (0,1/2), eta in (0,1/2]
};

enum class GammaClass { low = 0, med = 1, high = 2 };

/// Classification of one frequency center. For delta_j >= delta_min:
///   low  iff dist(xi, R \ J) >= s / delta_j   (well inside the band)
///   high iff dist(xi, J)     >= s / delta_j   (well outside the band)
///   med  otherwise                            (near the band edge)
/// Every index with delta_j < delta_min is high.
GammaClass classify_center(double delta_j, double xi, const PartitionParams& params);

struct GammaPartition {
  PartitionParams params;
  std::vector<GammaClass> classes;  // per basis atom index
  std::vector<int> low, med, high;  // atom indices per class
};

GammaPartition build_partition(const Basis& basis, const PartitionParams& params);

struct IntervalCounts {
  int j = 0;
  double delta = 0.0;
  int low = 0, med = 0, high = 0;
};

struct ClassCounts {
  int n_low = 0, n_med = 0, n_high = 0;
  std::vector<IntervalCounts> per_interval;
};

/// Counts each class per interval and asserts the local bounds:
/// #med_j <= 10 s always; #low_j = 0 when delta_j < s; and
/// delta_j - 2s - 1/2 <= #low_j <= delta_j + 1 when delta_j >= s.
/// Throws AssertionFailure naming the violating interval.
ClassCounts count_classes(const Basis& basis, const GammaPartition& partition);

struct EnergyReport {
  double e_low_out = 0.0;  // sum over Gamma_low of out-of-band energy
  double e_high_in = 0.0;  // sum over constructed Gamma_high of in-band energy
  int n_low = 0;
  int n_high = 0;
  // The never-constructed tail (delta_j < delta_stop, k beyond the analysis
  // band) is bounded analytically by O(delta_min) and not computed.
  double analytic_tail_scale = 0.0;
};

/// Direct frequency-domain energies of the classified atoms. Out-of-band
/// energy is evaluated as 1 - in-band (Parseval).
EnergyReport energy_sums(const Basis& basis, const GammaPartition& partition);

struct ResidualReport {
  double s_total = 0.0;
  double s_high = 0.0;  // sum over Gamma_high of ||T Phi||^2
  double s_low = 0.0;   // sum over Gamma_low of ||T Phi - Phi||^2
  double energy_bound = 0.0;  // e_high_in + e_low_out
  bool within_bound = false;  // s_total <= energy_bound + tol
};

/// Residual sums of the approximate-diagonalization hypothesis, computed from
/// the band-limited representation of T Phi (see Basis::tphi_norm_sq). The
/// bound s_total <= e_high_in + e_low_out holds term by term.
ResidualReport residual_sums(const Basis& basis, const GammaPartition& partition);

struct ShellProfile {
  std::vector<int> low_shells;   // #(L_low_{j,l}) over constructed indices
  std::vector<int> high_shells;  // #(L_high_{j,l})
};

/// Dyadic shells by distance to the band edge: shell l holds centers with
/// dist in [s 2^l / delta_j, s 2^{l+1} / delta_j). Each count is <= 10 s 2^l.
ShellProfile dyadic_shell_profile(const Basis& basis, int j, const PartitionParams& params);

}  // namespace plab
