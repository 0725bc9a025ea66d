#pragma once

#include <functional>
#include <vector>

namespace plab {

/// Gauss-Legendre rule on [-1, 1].
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Nodes/weights for an n-point rule, computed by Newton iteration on the
/// Legendre recurrence and cached per order. Thread-safe.
const GaussLegendreRule& gauss_legendre(int n);

/// Fills nodes/weights mapped to [a, b].
void gauss_legendre_on(int n, double a, double b, std::vector<double>& nodes,
                       std::vector<double>& weights);

/// Fixed-order Gauss-Legendre integral of f over [a, b].
double integrate_gl(const std::function<double(double)>& f, double a, double b, int n);

/// Composite rule over consecutive panels [breaks[i], breaks[i+1]].
double integrate_composite(const std::function<double(double)>& f,
                           const std::vector<double>& breaks, int nodes_per_panel);

/// Adaptive Gauss-Kronrod integral with absolute tolerance `tol`.
/// Throws QuadratureFailure if the error estimate does not reach tol.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double tol);

/// Splits [a, b] at the given breakpoints (clipped to the interval) and
/// subdivides every piece to length <= max_len. Returns sorted panel edges.
std::vector<double> make_panels(double a, double b, const std::vector<double>& breakpoints,
                                double max_len);

}  // namespace plab
