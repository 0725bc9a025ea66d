#include <doctest.h>

#include <cmath>
#include <random>

#include "core/errors.hpp"
#include "core/whitney.hpp"

using namespace plab;

namespace {

// brute-force validator over every emitted interval
void validate(const WhitneyDecomposition& dec) {
  double h = dec.half_width();
  double covered = 0.0;
  for (std::size_t i = 0; i < dec.intervals.size(); ++i) {
    const auto& iv = dec.intervals[i];
    // dyadic alignment: delta = 2^-level exactly, x an integer multiple
    CHECK(iv.delta == std::ldexp(1.0, -iv.level));
    double ratio = iv.x / iv.delta;
    CHECK(ratio == std::round(ratio));
    // containment and the two-sided distance comparison
    CHECK(iv.x >= -h);
    CHECK(iv.right() <= h);
    double dist = dec.boundary_dist(iv);
    CHECK(iv.delta <= dist);
    CHECK(dist <= 5.0 * iv.delta);
    CHECK(iv.delta >= dec.delta_stop);
    // sortedness and exact disjointness/contiguity with the next interval
    if (i + 1 < dec.intervals.size()) {
      const auto& nx = dec.intervals[i + 1];
      CHECK(iv.right() <= nx.x);
      double scale = std::max(iv.delta, nx.delta) / std::min(iv.delta, nx.delta);
      if (iv.right() == nx.x) CHECK(scale <= 4.0);
    }
    covered += iv.delta;
  }
  CHECK(covered == dec.covered_measure);
  CHECK(dec.covered_measure + dec.uncovered_measure ==
        doctest::Approx(dec.D).epsilon(1e-14));
  CHECK(dec.D - dec.covered_measure <= 8.0 * dec.delta_stop);
  // scale counting stays logarithmic
  for (double d = dec.delta_stop; d < dec.D; d *= 2) {
    int n = count_at_scale(dec, d);
    double lg = std::log(dec.D / d);
    if (lg > 0.3) CHECK(n <= 8.0 * lg);
  }
}

}  // namespace

TEST_CASE("decomposition of the unit-scale interval") {
  auto dec = decompose(2.0, std::ldexp(1.0, -6));
  validate(dec);
  CHECK(dec.covered_measure >= 2.0 - 8.0 * std::ldexp(1.0, -6));
  CHECK(!dec.intervals.empty());
}

TEST_CASE("scale counts at D = 16") {
  auto dec = decompose(16.0, std::ldexp(1.0, -4));
  validate(dec);
  int n_unit = count_at_scale(dec, 1.0);
  CHECK(n_unit <= 8.0 * std::log(16.0));
  CHECK(n_unit >= 2);
  CHECK(count_at_scale(dec, 16.0) == 0);
  CHECK(count_at_scale(dec, dec.delta_stop) ==
        static_cast<int>(dec.intervals.size()));
}

TEST_CASE("count at scale for D = 8") {
  auto dec = decompose(8.0, 1.0 / 16.0);
  validate(dec);
  CHECK(count_at_scale(dec, 0.25) <= 8.0 * std::log(32.0));
  CHECK_THROWS_AS(count_at_scale(dec, 1.0 / 64.0), InvalidParameter);
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(decompose(1.0, 0.01), InvalidParameter);
  CHECK_THROWS_AS(decompose(1.99, 0.01), InvalidParameter);
  CHECK_THROWS_AS(decompose(8.0, 0.0), InvalidParameter);
  CHECK_THROWS_AS(decompose(8.0, 1.0), InvalidParameter);   // >= D/8
  CHECK_THROWS_AS(decompose(8.0, 2.0), InvalidParameter);
  CHECK_THROWS_AS(decompose(8.0, std::ldexp(1.0, -50)), InvalidParameter);
}

TEST_CASE("non-integer lengths") {
  for (double D : {2.5, 5.5, 8.5, 13.25, 21.75}) {
    auto dec = decompose(D, std::ldexp(1.0, -6));
    validate(dec);
    CHECK(std::abs(dec.D - D) <= std::ldexp(1.0, -19));
  }
}

TEST_CASE("randomized decompositions hold the structural properties") {
  std::mt19937_64 gen(42);
  auto uni = [&] { return static_cast<double>(gen() >> 11) * 0x1.0p-53; };
  for (int trial = 0; trial < 60; ++trial) {
    double D = 2.0 + 126.0 * uni();
    int stop_exp = 2 + static_cast<int>(gen() % 8);
    double delta_stop = std::ldexp(1.0, -stop_exp);
    if (!(delta_stop < D / 8)) delta_stop = std::ldexp(1.0, -6);
    auto dec = decompose(D, delta_stop);
    validate(dec);
    // short-interval total measure stays proportional to the scale
    for (double s : {delta_stop * 2, delta_stop * 8, 1.0}) {
      double sum = 0.0;
      for (const auto& iv : dec.intervals)
        if (iv.delta < s) sum += iv.delta;
      CHECK(sum <= 8.0 * s);
    }
  }
}
