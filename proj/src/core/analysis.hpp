#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <utility>
#include <vector>

#include "calibration.hpp"
#include "partition.hpp"
#include "spectral.hpp"

namespace plab {

/// Matrix form of the abstract counting setup: a PSD contraction T, an
/// orthonormal basis (columns), and a 3-way labeling of the columns.
struct AbstractInstance {
  Eigen::MatrixXd T;
  Eigen::MatrixXd basis;
  std::vector<int> labels;  // 0 / 1 / 2 per column
  double epsilon = 0.1;

  void validate() const;  // norm <= 1, orthonormal columns, labels complete
};

struct MainLemmaReport {
  double h_sum = 0.0;      // sum_{I0} ||T phi||^2 + sum_{I2} ||T phi - phi||^2
  int m_eps = 0;           // #eigenvalues in (epsilon, 1 - epsilon)
  int i1_count = 0;
  bool hypothesis_holds = false;  // h_sum <= epsilon^3
  bool conclusion_holds = false;  // m_eps <= 2 * i1_count
};

/// Checks the counting inequality: when the hypothesis sum is <= eps^3, the
/// number of mid-range eigenvalues is at most twice the unlabeled-middle
/// column count. Reports (never throws) so that hypothesis-failing instances
/// are simply recorded as vacuous.
MainLemmaReport check_main_lemma(const AbstractInstance& inst);

/// Seeded generator: T = Q diag(lambda) Q^T with Haar-orthogonal Q and
/// lambda uniform on [0,1]; the test basis is an independent Haar rotation.
/// A seeded fraction of instances aligns the basis with the eigenbasis and
/// labels columns by eigenvalue so that the hypothesis actually holds
/// (pure-random labelings almost never satisfy it).
AbstractInstance random_instance(std::uint64_t seed, int dim_min = 2, int dim_max = 12);

/// (s, delta_min) from the calibrated constants:
/// delta_min = eps^3 / (2 C_eta), s = max(1, A_eta (log(log D / eps))^{1/(1-eta)}).
std::pair<double, double> choose_parameters(double D, double epsilon, double eta,
                                            const CalibrationConstants& constants);

/// K = A_eta (log(log D / eps))^{1+eta} log(D / eps).
double theorem_bound_K(double D, double epsilon, double eta, double A_eta);

struct TheoremReport {
  double D = 0.0, epsilon = 0.0, eta = 0.0;
  double s = 0.0, delta_min = 0.0;
  int m_eps = 0;
  int gamma_med_count = 0;
  double k_bound = 0.0;          // theorem-style K from the formula
  double k_conjectured = 0.0;    // log(D) log(1/eps) comparison line
  int mid_lo = 0, mid_hi = 0;    // observed 1-based mid-band index range
  double window_lo = 0.0, window_hi = 0.0;  // [D - 2 M_eps, D + 2 M_eps]
  double residual = 0.0;
  double residual_bound = 0.0;   // eps^3
  double e_low_out = 0.0, e_high_in = 0.0;
  int n_low = 0, n_med = 0, n_high = 0;
  int landau_index = 0;
  int spectrum_size = 0;
  bool pass_residual = false;
  bool pass_count = false;
  bool pass_window = false;

  bool all_pass() const { return pass_residual && pass_count && pass_window; }
};

/// Full pipeline: choose parameters, build decomposition/basis/partition,
/// measure residuals, compute the spectrum, and evaluate the three
/// assertions (residual <= eps^3, M_eps <= 2 #Gamma_med, mid-band indices
/// inside [D - 2 M_eps, D + 2 M_eps]).
TheoremReport run_theorem_pipeline(double D, double epsilon, double eta = 0.25,
                                   int m = 4, int quad_order = 0,
                                   const CalibrationConstants& constants = kCalibration);

}  // namespace plab
