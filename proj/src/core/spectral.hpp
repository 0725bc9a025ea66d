#pragma once

#include <Eigen/Dense>
#include <vector>

#include "grid.hpp"

namespace plab {

/// Configuration of the localization operator T = R_I P_J R_I with
/// J = [-1/2, 1/2] and I = [-D/2, D/2].
struct OperatorConfig {
  double D = 2.0;
  int quad_order = 64;     // Nystrom nodes across I
  double grid_rate = 16.0;  // samples per unit length for apply_T

  void validate() const;  // throws InvalidParameter
};

/// Non-increasing eigenvalues of the discretized operator.
struct Spectrum {
  std::vector<double> lambdas;  // raw values, sorted non-increasing
  double D = 0.0;
  int quad_order = 0;
  double trace = 0.0;
  double trace_sq = 0.0;

  /// #{k : lambdas[k] in (lo, hi)}, strict, with 1e-12 endpoint exclusion.
  int count_in(double lo, double hi) const;
};

/// sin(pi(x-y)) / (pi(x-y)) with the removable singularity at x = y.
double sinc_kernel(double x, double y);

/// Symmetrized Nystrom matrix W^{1/2} K W^{1/2} at Gauss-Legendre nodes on I.
Eigen::MatrixXd build_nystrom(const OperatorConfig& config);

/// Nystrom system with eigendecomposition retained for extension.
class NystromSystem {
 public:
  explicit NystromSystem(const OperatorConfig& config);

  const OperatorConfig& config() const { return config_; }
  const std::vector<double>& nodes() const { return nodes_; }
  const std::vector<double>& weights() const { return weights_; }
  const Eigen::MatrixXd& matrix() const { return matrix_; }
  const Eigen::VectorXd& eigenvalues() const { return eigvals_; }  // non-increasing
  const Eigen::MatrixXd& eigenvectors() const { return eigvecs_; }

  Spectrum spectrum() const;

  /// Nystrom extension of the r-th eigenfunction to arbitrary x:
  /// psi(x) = (1/lambda) sum_b w_b K(x, x_b) psi(x_b).
  double eigenfunction(int r, double x) const;

 private:
  OperatorConfig config_;
  std::vector<double> nodes_, weights_;
  Eigen::MatrixXd matrix_;
  Eigen::VectorXd eigvals_;
  Eigen::MatrixXd eigvecs_;
};

Spectrum eigen_spectrum(const OperatorConfig& config);

/// T f on a uniform grid: zero outside I, DFT, indicator of J (half weight on
/// the boundary bins), inverse DFT, zero outside I. The grid length must be a
/// power of two and the grid must cover [-D/2 - 8, D/2 + 8].
SampledFunction apply_T(const SampledFunction& f, const OperatorConfig& config);

struct LandauReport {
  int index_half = 0;      // i* = #{lambda_k >= 1/2}, 1-based separation index
  int floor_d = 0;         // [D]
  bool pass = false;       // i* in {[D], [D]+1}
  // "standard": lambda_[D] >= 1/2 >= lambda_[D]+1 (i* = [D]);
  // "shifted+1": i* = [D]+1; "literal": the transposed ordering of the
  // half-crossing statement (i* = [D]-1), never observed in practice.
  const char* orientation = "none";
};

/// Locates where 1/2 separates consecutive eigenvalues relative to [D].
LandauReport landau_check(const Spectrum& spec);

}  // namespace plab
