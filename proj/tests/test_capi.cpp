#include <doctest.h>

#include <cstring>
#include <string>
#include <vector>

#include "core/spectral.hpp"
#include "core/whitney.hpp"
#include "plungelab.h"

TEST_CASE("spectrum through the C surface") {
  plab_spectrum* spec = nullptr;
  REQUIRE(plab_spectrum_compute(8.0, 256, &spec) == PLAB_OK);
  REQUIRE(spec != nullptr);
  int n = plab_spectrum_count(spec);
  CHECK(n == 256);
  std::vector<double> buf(n);
  CHECK(plab_spectrum_eigenvalues(spec, buf.data(), buf.size()) == PLAB_OK);

  // agrees with the core library
  plab::OperatorConfig config{8.0, 256, 16.0};
  auto core = plab::eigen_spectrum(config);
  for (int i = 0; i < n; ++i) CHECK(buf[i] == core.lambdas[i]);
  CHECK(plab_spectrum_trace(spec) == core.trace);
  CHECK(plab_spectrum_trace_sq(spec) == core.trace_sq);
  CHECK(plab_spectrum_d(spec) == 8.0);
  CHECK(plab_spectrum_quad_order(spec) == 256);
  CHECK(plab_spectrum_count_between(spec, 0.1, 0.9) == core.count_in(0.1, 0.9));

  int index = 0, orientation = -1;
  CHECK(plab_spectrum_landau(spec, &index, &orientation) == PLAB_OK);
  CHECK(index == 8);
  CHECK(orientation == 0);

  SUBCASE("small buffer is rejected") {
    double small[4];
    CHECK(plab_spectrum_eigenvalues(spec, small, 4) == PLAB_ERR_INVALID);
  }
  plab_spectrum_free(spec);
}

TEST_CASE("invalid configurations surface as status codes") {
  plab_spectrum* spec = nullptr;
  CHECK(plab_spectrum_compute(1.0, 0, &spec) == PLAB_ERR_INVALID);
  CHECK(spec == nullptr);
  CHECK(std::strlen(plab_last_error()) > 0);

  plab_whitney* w = nullptr;
  CHECK(plab_whitney_decompose(8.0, 4.0, &w) == PLAB_ERR_INVALID);
  CHECK(w == nullptr);
}

TEST_CASE("whitney handles") {
  plab_whitney* w = nullptr;
  REQUIRE(plab_whitney_decompose(8.0, 0.0625, &w) == PLAB_OK);
  int n = plab_whitney_count(w);
  auto core = plab::decompose(8.0, 0.0625);
  CHECK(n == static_cast<int>(core.intervals.size()));
  double x = 0, delta = 0;
  int level = 0;
  CHECK(plab_whitney_interval(w, 0, &x, &delta, &level) == PLAB_OK);
  CHECK(x == core.intervals[0].x);
  CHECK(delta == core.intervals[0].delta);
  CHECK(plab_whitney_interval(w, n, &x, &delta, &level) == PLAB_ERR_INVALID);
  CHECK(plab_whitney_covered_measure(w) == core.covered_measure);
  CHECK(plab_whitney_count_at_scale(w, 1.0) == plab::count_at_scale(core, 1.0));
  CHECK(plab_whitney_count_at_scale(w, 0.001) < 0);  // below truncation
  plab_whitney_free(w);
}

TEST_CASE("basis and partition handles") {
  plab_basis* basis = nullptr;
  REQUIRE(plab_basis_build(8.0, 0.125, 0.0, 0, &basis) == PLAB_OK);
  int n = plab_basis_atom_count(basis);
  CHECK(n > 0);
  int j = -1, k = -1;
  double c = 0, xi = 0;
  REQUIRE(plab_basis_atom(basis, 0, &j, &k, &c, &xi) == PLAB_OK);
  CHECK(j >= 0);
  CHECK(k == 0);
  CHECK(c > 0.0);
  double x = 0, delta = 0;
  CHECK(plab_basis_interval_of(basis, j, &x, &delta) == PLAB_OK);
  CHECK(xi == (2.0 * k + 1.0) / (4.0 * delta));
  double v = 0;
  CHECK(plab_basis_atom_eval(basis, 0, x + delta / 2, &v) == PLAB_OK);
  CHECK(v != 0.0);

  double offdiag = 1.0, diagdev = 1.0;
  REQUIRE(plab_basis_gram_stats(basis, 64.0, &offdiag, &diagdev) == PLAB_OK);
  CHECK(offdiag <= 1e-5);
  CHECK(diagdev <= 1e-6);
  CHECK(plab_basis_gram_stats(basis, 4.0, &offdiag, &diagdev) == PLAB_ERR_GRID);

  plab_partition* part = nullptr;
  REQUIRE(plab_partition_build(basis, 2.0, 0.125, &part) == PLAB_OK);
  int nl = 0, nm = 0, nh = 0;
  plab_partition_counts(part, &nl, &nm, &nh);
  CHECK(nl + nm + nh == n);
  CHECK(plab_partition_class_of(part, 0) >= 0);
  CHECK(plab_partition_class_of(part, n) < 0);
  double el = -1, eh = -1;
  REQUIRE(plab_partition_energies(part, &el, &eh) == PLAB_OK);
  CHECK(el >= 0.0);
  CHECK(eh >= 0.0);
  double st = -1, sh = -1, sl = -1;
  REQUIRE(plab_partition_residuals(part, &st, &sh, &sl) == PLAB_OK);
  CHECK(st == sh + sl);
  CHECK(st <= el + eh + 1e-8);
  plab_partition_free(part);
  plab_basis_free(basis);
}

TEST_CASE("parameter formulas") {
  double s = 0, dmin = 0, kb = 0;
  REQUIRE(plab_choose_parameters(16.0, 0.1, 0.25, &s, &dmin) == PLAB_OK);
  CHECK(s >= 1.0);
  CHECK(dmin > 0.0);
  CHECK(dmin < 1.0);
  REQUIRE(plab_k_bound(16.0, 0.1, 0.25, &kb) == PLAB_OK);
  CHECK(kb > 0.0);
  CHECK(plab_choose_parameters(1.0, 0.1, 0.25, &s, &dmin) == PLAB_ERR_INVALID);
}

TEST_CASE("theorem pipeline handle") {
  plab_theorem* rep = nullptr;
  REQUIRE(plab_theorem_run(4.0, 0.1, 0.0, 0, 0, &rep) == PLAB_OK);
  CHECK(plab_theorem_pass_flags(rep) == 7);
  CHECK(plab_theorem_m_eps(rep) >= 1);
  CHECK(plab_theorem_gamma_med(rep) > 0);
  CHECK(plab_theorem_residual(rep) <= plab_theorem_residual_bound(rep));
  int lo = 0, hi = 0;
  plab_theorem_mid_range(rep, &lo, &hi);
  double wlo = 0, whi = 0;
  plab_theorem_window(rep, &wlo, &whi);
  CHECK(lo >= wlo);
  CHECK(hi <= whi);
  CHECK(plab_theorem_landau_index(rep) == 4);
  plab_theorem_free(rep);
}

TEST_CASE("verification battery with and without fault injection") {
  plab_verify* clean = nullptr;
  REQUIRE(plab_verify_run(4.0, 0.1, 0.0, 0, 0, 64.0, 1, nullptr, &clean) == PLAB_OK);
  CHECK(plab_verify_all_pass(clean) == 1);
  int n = plab_verify_count(clean);
  CHECK(n >= 10);
  plab_verify_free(clean);

  plab_verify* faulty = nullptr;
  REQUIRE(plab_verify_run(4.0, 0.1, 0.0, 0, 0, 64.0, 1, "cjk", &faulty) == PLAB_OK);
  CHECK(plab_verify_all_pass(faulty) == 0);
  bool gram_named_failing = false;
  for (int i = 0; i < plab_verify_count(faulty); ++i) {
    const char* name = nullptr;
    double measured = 0, bound = 0;
    int pass = 1;
    plab_verify_check(faulty, i, &name, &measured, &bound, &pass);
    if (std::string(name).find("gram") != std::string::npos && !pass)
      gram_named_failing = true;
  }
  CHECK(gram_named_failing);
  plab_verify_free(faulty);
}

TEST_CASE("version string") {
  CHECK(std::string(plab_version()) == "0.1.0");
}
