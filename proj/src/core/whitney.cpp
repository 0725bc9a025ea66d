#include "whitney.hpp"

#include <algorithm>
#include <cmath>

#include "errors.hpp"

namespace plab {

double WhitneyDecomposition::boundary_dist(const WhitneyInterval& iv) const {
  double h = half_width();
  return std::min(iv.x + h, h - iv.right());
}

namespace {

struct Builder {
  double half;        // D/2 after snapping
  double delta_stop;
  std::vector<WhitneyInterval> out;
  double uncovered = 0.0;

  // Q = (x, x + len], len = 2^-level.
  void visit(double x, double len, int level) {
    double lo = x, hi = x + len;
    if (hi <= -half || lo >= half) return;  // no overlap with I
    bool inside = (lo >= -half) && (hi <= half);
    if (inside) {
      double dist = std::min(lo + half, half - hi);
      if (len <= dist) {
        out.push_back({0, x, len, level});
        return;
      }
    }
    double child = len / 2;
    if (child < delta_stop) {
      uncovered += std::min(hi, half) - std::max(lo, -half);
      return;
    }
    visit(x, child, level + 1);
    visit(x + child, child, level + 1);
  }
};

}  // namespace

WhitneyDecomposition decompose(double D, double delta_stop) {
  if (!(D >= 2.0)) throw InvalidParameter("decompose: D must be >= 2");
  if (!(delta_stop > 0.0) || !(delta_stop < D / 8))
    throw InvalidParameter("decompose: need 0 < delta_stop < D/8");
  if (delta_stop < std::ldexp(1.0, -48))
    throw InvalidParameter("decompose: delta_stop below exact dyadic range");

  // Snap D/2 to the 2^-20 grid so interval endpoints stay exact dyadics.
  double half = std::round(std::ldexp(D / 2, 20));
  half = std::ldexp(half, -20);

  WhitneyDecomposition dec;
  dec.D = 2.0 * half;
  dec.delta_stop = delta_stop;

  Builder b{half, delta_stop, {}, 0.0};
  // Root level: dyadic length >= D, a handful of intervals covering I.
  int level0 = -static_cast<int>(std::ceil(std::log2(dec.D)));
  double len0 = std::ldexp(1.0, -level0);
  long k_lo = static_cast<long>(std::floor(-half / len0)) - 1;
  long k_hi = static_cast<long>(std::ceil(half / len0)) + 1;
  for (long k = k_lo; k <= k_hi; ++k) b.visit(k * len0, len0, level0);

  std::sort(b.out.begin(), b.out.end(),
            [](const WhitneyInterval& a, const WhitneyInterval& c) { return a.x < c.x; });
  for (std::size_t i = 0; i < b.out.size(); ++i) b.out[i].j = static_cast<int>(i);

  dec.intervals = std::move(b.out);
  dec.uncovered_measure = b.uncovered;
  double covered = 0.0;
  for (const auto& iv : dec.intervals) covered += iv.delta;
  dec.covered_measure = covered;
  return dec;
}

int count_at_scale(const WhitneyDecomposition& decomp, double delta_min) {
  if (delta_min < decomp.delta_stop)
    throw InvalidParameter("count_at_scale: delta_min below truncation scale");
  int n = 0;
  for (const auto& iv : decomp.intervals)
    if (iv.delta >= delta_min) ++n;
  return n;
}

}  // namespace plab
