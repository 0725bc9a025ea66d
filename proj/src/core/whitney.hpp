#pragma once

#include <vector>

namespace plab {

/// One dyadic piece (x, x + delta] of the decomposition, delta = 2^-level.
struct WhitneyInterval {
  int j = 0;        // position in the sorted interval list
  double x = 0.0;   // left endpoint, an exact multiple of delta
  double delta = 0.0;
  int level = 0;    // delta = 2^-level (level may be negative)

  double right() const { return x + delta; }
  double mid() const { return x + 0.5 * delta; }
};

/// Dyadic Whitney decomposition of I = (-D/2, D/2], truncated at delta_stop.
/// Every emitted interval Q satisfies |Q| <= dist(Q, boundary of I); the
/// uncovered boundary slivers have total measure <= 8 * delta_stop.
struct WhitneyDecomposition {
  double D = 0.0;           // after snapping to the dyadic grid
  double delta_stop = 0.0;
  std::vector<WhitneyInterval> intervals;  // sorted by x, pairwise disjoint
  double covered_measure = 0.0;
  double uncovered_measure = 0.0;

  double half_width() const { return D / 2; }
  /// min distance from the interval to {-D/2, D/2}.
  double boundary_dist(const WhitneyInterval& iv) const;
};

/// Builds the decomposition. A maximal dyadic Q inside I is accepted when
/// |Q| <= dist(Q, boundary); recursion descends otherwise and stops below
/// delta_stop. D is snapped to the nearest multiple of 2^-20 so all interval
/// arithmetic is exact in doubles.
WhitneyDecomposition decompose(double D, double delta_stop);

/// #{j : delta_j >= delta_min}; delta_min must be >= delta_stop.
int count_at_scale(const WhitneyDecomposition& decomp, double delta_min);

}  // namespace plab
