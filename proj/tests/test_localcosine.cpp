#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "core/cutoff.hpp"
#include "core/errors.hpp"
#include "core/localcosine.hpp"
#include "core/quadrature.hpp"
#include "core/whitney.hpp"

using namespace plab;

namespace {
constexpr double kPi = std::numbers::pi;

Basis make_basis(double D, double delta_stop, double xi_max = 4.0, int m = 4) {
  return Basis(decompose(D, delta_stop), CutoffSpec(m), xi_max);
}

// fine-grid Riemann oracle for inner products of compactly supported smooth
// functions (midpoint rule; spectrally small error once transitions resolve)
double riemann_inner(const Basis& basis, int a, int b, double lo, double hi,
                     std::size_t n) {
  double dx = (hi - lo) / static_cast<double>(n);
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double x = lo + (i + 0.5) * dx;
    sum += basis.atom_value(a, x) * basis.atom_value(b, x);
  }
  return sum * dx;
}

}  // namespace

TEST_CASE("transition widths") {
  auto dec = decompose(8.0, 1.0 / 32.0);
  auto widths = select_transition_widths(dec);
  REQUIRE(widths.size() == dec.intervals.size());
  for (std::size_t i = 0; i < widths.size(); ++i) {
    double d = dec.intervals[i].delta;
    CHECK(widths[i].left >= d / 100.0);
    CHECK(widths[i].left <= d / 10.0);
    CHECK(widths[i].right >= d / 100.0);
    CHECK(widths[i].right <= d / 10.0);
    CHECK(widths[i].left + widths[i].right <= d / 10.0 + 1e-15);
    // neighbor compatibility at shared endpoints
    if (i + 1 < widths.size() &&
        dec.intervals[i].right() == dec.intervals[i + 1].x) {
      CHECK(widths[i].right == widths[i + 1].left);
      double dn = dec.intervals[i + 1].delta;
      CHECK(widths[i].right == std::min(d, dn) / 20.0);
    }
  }
}

TEST_CASE("window values") {
  auto basis = make_basis(8.0, 1.0 / 8.0);
  const auto& dec = basis.decomposition();
  for (int j = 0; j < static_cast<int>(dec.intervals.size()); ++j) {
    const auto& iv = dec.intervals[j];
    CHECK(basis.window(j, iv.mid()) == 1.0);
    CHECK(basis.window(j, iv.x) ==
          doctest::Approx(std::sqrt(2.0) / 2).epsilon(1e-14));
    CHECK(basis.window(j, iv.x - iv.delta / 9.0) == 0.0);
    // flat region covers [x + delta/10, x + 9 delta/10]
    for (double t : {0.1, 0.35, 0.9})
      CHECK(basis.window(j, iv.x + t * iv.delta) == 1.0);
  }
}

TEST_CASE("normalization constant") {
  // idealized flat window: integral = delta/2, C = sqrt(2)
  CHECK(normalization_from_integral(1.0, 0.5) == doctest::Approx(std::sqrt(2.0)));
  CHECK(normalization_from_integral(4.0, 2.0) == doctest::Approx(std::sqrt(2.0)));
  CHECK_THROWS_AS(normalization_from_integral(1.0, 0.0), QuadratureFailure);

  SUBCASE("high-frequency limit") {
    // C_jk approaches delta^{1/2} (int theta_j^2 / 2)^{-1/2}
    auto basis = make_basis(2.0, 1.0 / 8.0, 130.0);
    const auto& dec = basis.decomposition();
    int j = -1;
    for (int i = 0; i < static_cast<int>(dec.intervals.size()); ++i)
      if (dec.intervals[i].delta == 0.5) j = i;
    REQUIRE(j >= 0);
    double lo = basis.support_lo(j), hi = basis.support_hi(j);
    double w2 = checked_panel_integral(
        [&](double x) { double w = basis.window(j, x); return w * w; }, lo, hi, {},
        (hi - lo) / 64.0);
    double c_inf = std::sqrt(dec.intervals[j].delta / (w2 / 2.0));
    double c64 = 0.0, c128 = 0.0;
    for (const auto& atom : basis.atoms()) {
      if (atom.j == j && atom.k == 64) c64 = atom.c_norm;
      if (atom.j == j && atom.k == 128) c128 = atom.c_norm;
    }
    REQUIRE(c64 > 0.0);
    REQUIRE(c128 > 0.0);
    CHECK(std::abs(c128 - c_inf) <= std::abs(c64 - c_inf) + 1e-12);
    CHECK(c128 == doctest::Approx(c_inf).epsilon(1e-3));
  }

  SUBCASE("range over a full basis") {
    auto basis = make_basis(8.0, 1.0 / 32.0);
    for (const auto& atom : basis.atoms()) {
      CHECK(atom.c_norm >= 1.0 / std::sqrt(2.0));
      CHECK(atom.c_norm <= 15.0);
      CHECK(atom.xi == (2.0 * atom.k + 1.0) /
                           (4.0 * basis.decomposition().intervals[atom.j].delta));
    }
  }
}

TEST_CASE("atom evaluation") {
  auto basis = make_basis(8.0, 1.0 / 4.0);
  const auto& dec = basis.decomposition();
  int idx = 0;
  for (int i = 0; i < basis.atom_count(); ++i)
    if (dec.intervals[basis.atoms()[i].j].delta == 1.0 && basis.atoms()[i].k == 2)
      idx = i;
  const auto& atom = basis.atoms()[idx];
  const auto& iv = dec.intervals[atom.j];

  CHECK(basis.atom_value(idx, basis.support_lo(atom.j) - 0.01) == 0.0);
  CHECK(basis.atom_value(idx, basis.support_hi(atom.j) + 0.01) == 0.0);
  CHECK(basis.atom_value(idx, iv.x - iv.delta / 9.0) == 0.0);
  // half-integer cosine vanishes at the right endpoint
  CHECK(std::abs(basis.atom_value(idx, iv.right())) <= 1e-10);

  // unit norm on a fine grid
  double lo = basis.support_lo(atom.j), hi = basis.support_hi(atom.j);
  double norm = riemann_inner(basis, idx, idx, lo, hi, 1 << 18);
  CHECK(norm == doctest::Approx(1.0).epsilon(1e-6));

  auto sampled = basis.sample_atom(idx, lo, (hi - lo) / (1 << 16), 1 << 16);
  CHECK(sampled.norm_sq() == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("gram matrix") {
  auto basis = make_basis(4.0, 1.0 / 8.0);

  SUBCASE("single atom") {
    auto g = basis.gram_matrix({0}, 64.0);
    REQUIRE(g.rows() == 1);
    CHECK(g(0, 0) == doctest::Approx(1.0).epsilon(1e-12));
  }

  SUBCASE("same-interval and adjacent-interval pairs vanish") {
    const auto& atoms = basis.atoms();
    int a = -1, b = -1;
    for (int i = 0; i < basis.atom_count() && a < 0; ++i)
      for (int l = i + 1; l < basis.atom_count() && a < 0; ++l)
        if (atoms[i].j == atoms[l].j) { a = i; b = l; }
    REQUIRE(a >= 0);
    auto g = basis.gram_matrix({a, b}, 64.0);
    CHECK(std::abs(g(0, 1)) <= 1e-6);

    int c = -1, d = -1;
    for (int i = 0; i < basis.atom_count() && c < 0; ++i)
      for (int l = 0; l < basis.atom_count() && c < 0; ++l)
        if (atoms[i].j + 1 == atoms[l].j &&
            basis.support_hi(atoms[i].j) > basis.support_lo(atoms[l].j)) {
          c = i;
          d = l;
        }
    REQUIRE(c >= 0);
    auto g2 = basis.gram_matrix({c, d}, 64.0);
    CHECK(std::abs(g2(0, 1)) <= 1e-6);
  }

  SUBCASE("full basis is orthonormal") {
    auto g = basis.gram_matrix({}, 64.0);
    auto stats = Basis::gram_stats(g);
    CHECK(stats.max_diag_dev <= 1e-6);
    CHECK(stats.max_offdiag <= 1e-5);
  }

  SUBCASE("rate below eight nodes per oscillation is rejected") {
    CHECK_THROWS_AS(basis.gram_matrix({}, 8.0), GridTooCoarse);
  }

  SUBCASE("independent Riemann oracle agrees on a sample of entries") {
    const auto& atoms = basis.atoms();
    for (auto [a, b] : {std::pair{0, 1}, {2, 5}, {3, 3}}) {
      double lo = std::min(basis.support_lo(atoms[a].j), basis.support_lo(atoms[b].j));
      double hi = std::max(basis.support_hi(atoms[a].j), basis.support_hi(atoms[b].j));
      double oracle = riemann_inner(basis, a, b, lo, hi, 1 << 18);
      auto g = basis.gram_matrix({a, b}, 64.0);
      CHECK(g(0, 1) == doctest::Approx(oracle).epsilon(1e-6));
    }
  }
}

TEST_CASE("atom spectra") {
  auto basis = make_basis(16.0, 1.0 / 4.0);
  const auto& atoms = basis.atoms();
  int idx = -1;
  for (int i = 0; i < basis.atom_count(); ++i)
    if (basis.decomposition().intervals[atoms[i].j].delta == 4.0 && atoms[i].k == 1)
      idx = i;
  REQUIRE(idx >= 0);
  auto spec = basis.atom_spectrum(idx, 1 << 15, 8);

  SUBCASE("parseval") {
    double energy = 0.0;
    for (const auto& z : spec.values) energy += std::norm(z);
    energy *= spec.dx;
    CHECK(energy == doctest::Approx(1.0).epsilon(1e-6));
  }

  SUBCASE("conjugate symmetry of the magnitude") {
    std::size_t n = spec.size();
    for (std::size_t i = 1; i < n / 2; i += 37) {
      double pos = std::abs(spec.values[n / 2 + i]);
      double neg = std::abs(spec.values[n / 2 - i]);
      CHECK(pos == doctest::Approx(neg).epsilon(1e-10));
    }
  }

  SUBCASE("energy localizes near the frequency centers") {
    double delta = 4.0, xi_c = atoms[idx].xi;
    double e = band_energy(spec, xi_c - 4.0 / delta, xi_c + 4.0 / delta) +
               band_energy(spec, -xi_c - 4.0 / delta, -xi_c + 4.0 / delta);
    CHECK(e >= 0.90);
  }

  SUBCASE("pointwise transform agrees with the padded DFT") {
    // compare at exact bin frequencies so only the aliasing error remains
    std::size_t center = spec.size() / 2;
    for (std::size_t off : {std::size_t{3}, std::size_t{40}, std::size_t{170}}) {
      double xi = spec.coord(center + off);
      auto direct = basis.atom_fourier(idx, xi);
      CHECK(std::abs(direct - spec.values[center + off]) <= 1e-8);
    }
  }

  SUBCASE("grid validation") {
    CHECK_THROWS_AS(basis.atom_spectrum(idx, 1000, 8), InvalidParameter);
    CHECK_THROWS_AS(basis.atom_spectrum(idx, 1 << 15, 3), InvalidParameter);
    CHECK_THROWS_AS(basis.atom_spectrum(idx, 256, 64), GridTooCoarse);
  }
}

TEST_CASE("band energy routes agree") {
  // moderate atom: public route (padded DFT) vs direct panel quadrature
  auto basis = make_basis(8.0, 1.0 / 32.0);
  const auto& atoms = basis.atoms();
  int mid = -1, tiny = -1;
  for (int i = 0; i < basis.atom_count(); ++i) {
    double d = basis.decomposition().intervals[atoms[i].j].delta;
    if (d == 1.0 && atoms[i].k == 0) mid = i;
    if (d == 1.0 / 16.0 && atoms[i].k == 0) tiny = i;
  }
  REQUIRE(mid >= 0);
  REQUIRE(tiny >= 0);

  auto direct_band = [&](int idx) {
    std::vector<double> edges;
    const int panels = 64;
    for (int p = 0; p <= panels; ++p) edges.push_back(-0.5 + p / double(panels));
    return integrate_composite(
        [&](double xi) { return std::norm(basis.atom_fourier(idx, xi)); }, edges, 16);
  };
  CHECK(basis.in_band_energy(mid) == doctest::Approx(direct_band(mid)).epsilon(1e-7));
  // tiny atoms take the direct route internally; cross-check against the DFT
  auto spec = basis.atom_spectrum(tiny, 1 << 17, 8);
  CHECK(basis.in_band_energy(tiny) ==
        doctest::Approx(band_energy(spec, -0.5, 0.5)).epsilon(1e-6));
}

TEST_CASE("completeness proxy on a smooth test function") {
  auto f = [](double x) { return std::exp(-x * x); };
  double f_norm = integrate_adaptive([&](double x) { return f(x) * f(x); },
                                     -4.0, 4.0, 1e-13);
  auto captured = [&](double xi_max) {
    auto basis = make_basis(8.0, 1.0 / 16.0, xi_max);
    double sum = 0.0;
    for (int i = 0; i < basis.atom_count(); ++i) {
      const auto& atom = basis.atoms()[i];
      double lo = basis.support_lo(atom.j), hi = basis.support_hi(atom.j);
      double wmin = std::min(basis.widths()[atom.j].left, basis.widths()[atom.j].right);
      double max_len = std::min({2.0 / (atom.xi + 1.0), (hi - lo) / 4.0, wmin});
      auto panels = make_panels(lo, hi, {}, max_len);
      double c = integrate_composite(
          [&](double x) { return f(x) * basis.atom_value(i, x); }, panels, 16);
      sum += c * c;
      // Bessel along the way: partial sums never exceed the norm
      CHECK(sum <= f_norm + 1e-9);
    }
    return sum;
  };
  // captured energy grows toward ||f||^2 as the analysis band widens
  double s4 = captured(4.0);
  double s8 = captured(8.0);
  double s16 = captured(16.0);
  CHECK(s8 >= s4);
  CHECK(s16 >= s8);
  CHECK(f_norm - s16 <= (f_norm - s4) / 4.0);
  CHECK(s16 >= f_norm - 2e-3);
}

TEST_CASE("fitted envelope bounds atom spectra") {
  auto basis = make_basis(8.0, 1.0 / 4.0);
  const auto& atoms = basis.atoms();
  const auto& dec = basis.decomposition();
  int checked = 0;
  for (int i = 0; i < basis.atom_count() && checked < 3; ++i) {
    const auto& atom = atoms[i];
    double delta = dec.intervals[atom.j].delta;
    if (!(delta >= 1.0) || atom.k % 3 != 0) continue;
    ++checked;
    auto env = fit_window_envelope(basis.cutoff(),
                                   basis.widths()[atom.j].left / delta,
                                   basis.widths()[atom.j].right / delta, 1.3);
    auto B = [&](double u) {
      return env.amplitude * std::exp(-env.rate * std::pow(std::abs(u), env.exponent));
    };
    auto spec = basis.atom_spectrum(i, 1 << 15, 8);
    for (std::size_t q = 0; q < spec.size(); q += 11) {
      double xi = spec.coord(q);
      double mag = std::abs(spec.values[q]);
      if (mag < 1e-10) continue;
      double bound = (atom.c_norm / 2.0) * std::sqrt(delta) *
                     (B(delta * (xi - atom.xi)) + B(delta * (xi + atom.xi)));
      CHECK(mag <= bound * (1.0 + 1e-9));
    }
  }
  CHECK(checked == 3);
}

TEST_CASE("incompatible adjacent scales are rejected") {
  // hand-build a decomposition with a scale jump of 8 at a shared endpoint
  WhitneyDecomposition dec;
  dec.D = 16.0;
  dec.delta_stop = 0.25;
  dec.intervals.push_back({0, -4.0, 4.0, -2});
  dec.intervals.push_back({1, 0.0, 0.5, 1});
  CHECK_THROWS_AS(select_transition_widths(dec), IncompatibleScales);
}
