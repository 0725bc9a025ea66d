#include "quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "errors.hpp"

namespace plab {

namespace {

GaussLegendreRule compute_rule(int n) {
  GaussLegendreRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double pi = 3.14159265358979323846;
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(pi * (i + 0.75) / (n + 0.5));
    double dpdx = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      // Legendre recurrence for P_n(x) and P_n'(x)
      double p0 = 1.0, p1 = x;
      for (int k = 1; k < n; ++k) {
        double p2 = ((2 * k + 1) * x * p1 - k * p0) / (k + 1);
        p0 = p1;
        p1 = p2;
      }
      dpdx = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dpdx;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    double w = 2.0 / ((1.0 - x * x) * dpdx * dpdx);
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

std::map<int, GaussLegendreRule>& rule_cache() {
  static std::map<int, GaussLegendreRule> cache;
  return cache;
}

std::mutex& cache_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

const GaussLegendreRule& gauss_legendre(int n) {
  if (n < 1) throw InvalidParameter("gauss_legendre: order must be >= 1");
  std::lock_guard<std::mutex> lock(cache_mutex());
  auto it = rule_cache().find(n);
  if (it == rule_cache().end()) it = rule_cache().emplace(n, compute_rule(n)).first;
  return it->second;
}

void gauss_legendre_on(int n, double a, double b, std::vector<double>& nodes,
                       std::vector<double>& weights) {
  const auto& rule = gauss_legendre(n);
  nodes.resize(n);
  weights.resize(n);
  double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  for (int i = 0; i < n; ++i) {
    nodes[i] = mid + half * rule.nodes[i];
    weights[i] = half * rule.weights[i];
  }
}

double integrate_gl(const std::function<double(double)>& f, double a, double b, int n) {
  const auto& rule = gauss_legendre(n);
  double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double sum = 0.0;
  for (int i = 0; i < n; ++i) sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
  return half * sum;
}

double integrate_composite(const std::function<double(double)>& f,
                           const std::vector<double>& breaks, int nodes_per_panel) {
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i)
    total += integrate_gl(f, breaks[i], breaks[i + 1], nodes_per_panel);
  return total;
}

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double tol) {
  using boost::math::quadrature::gauss_kronrod;
  double err = 0.0;
  // boost's tolerance argument is relative; convert and bound the depth
  double val = gauss_kronrod<double, 15>::integrate(f, a, b, 12, 1e-13, &err);
  if (!(err <= std::max(tol, std::abs(val) * 1e-12) + 1e-300)) {
    throw QuadratureFailure("adaptive quadrature did not reach tolerance");
  }
  return val;
}

std::vector<double> make_panels(double a, double b, const std::vector<double>& breakpoints,
                                double max_len) {
  std::vector<double> edges;
  edges.push_back(a);
  for (double bp : breakpoints)
    if (bp > a && bp < b) edges.push_back(bp);
  edges.push_back(b);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  std::vector<double> out;
  out.push_back(edges.front());
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    double lo = edges[i], hi = edges[i + 1];
    int pieces = std::max(1, static_cast<int>(std::ceil((hi - lo) / max_len)));
    for (int p = 1; p <= pieces; ++p) out.push_back(lo + (hi - lo) * p / pieces);
  }
  return out;
}

}  // namespace plab
