#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace plab {

/// Uniform-grid samples of a function: value[i] is the sample at x0 + i*dx.
/// Used both in the time domain (x = position) and, for spectra, in the
/// frequency domain (x = frequency in cycles per unit length).
struct SampledFunction {
  double x0 = 0.0;
  double dx = 1.0;
  std::vector<std::complex<double>> values;

  std::size_t size() const { return values.size(); }
  double coord(std::size_t i) const { return x0 + static_cast<double>(i) * dx; }

  /// dx-weighted squared l2 norm (Riemann approximation of the L2 norm).
  double norm_sq() const;
  /// dx-weighted inner product <this, other>; grids must match.
  std::complex<double> inner(const SampledFunction& other) const;
};

/// Builds a centered power-of-two grid of n samples with spacing dx,
/// x0 = -n*dx/2 (midpoint-free convention: samples at x0, x0+dx, ...).
SampledFunction make_grid(std::size_t n, double dx);

}  // namespace plab
