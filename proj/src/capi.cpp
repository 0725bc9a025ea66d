#include "plungelab.h"

#include <cmath>
#include <cstring>
#include <string>

#include "core/analysis.hpp"
#include "core/errors.hpp"
#include "core/localcosine.hpp"
#include "core/partition.hpp"
#include "core/spectral.hpp"
#include "core/verify.hpp"
#include "core/version.hpp"
#include "core/whitney.hpp"

namespace {

thread_local std::string g_last_error;

plab_status set_error(plab_status code, const char* what) {
  g_last_error = what ? what : "unknown error";
  return code;
}

template <typename Fn>
plab_status guarded(Fn&& fn) {
  try {
    fn();
    return PLAB_OK;
  } catch (const plab::InvalidParameter& e) {
    return set_error(PLAB_ERR_INVALID, e.what());
  } catch (const plab::GridTooCoarse& e) {
    return set_error(PLAB_ERR_GRID, e.what());
  } catch (const plab::Error& e) {
    return set_error(PLAB_ERR_NUMERIC, e.what());
  } catch (const std::exception& e) {
    return set_error(PLAB_ERR_INTERNAL, e.what());
  }
}

}  // namespace

struct plab_spectrum {
  plab::Spectrum spec;
};

struct plab_whitney {
  plab::WhitneyDecomposition dec;
};

struct plab_basis {
  plab::Basis basis;
};

struct plab_partition {
  const plab_basis* owner;
  plab::GammaPartition part;
};

struct plab_theorem {
  plab::TheoremReport rep;
};

struct plab_verify {
  std::vector<plab::CheckResult> checks;
};

extern "C" {

const char* plab_version(void) { return plab::kVersion; }

const char* plab_last_error(void) { return g_last_error.c_str(); }

plab_status plab_spectrum_compute(double D, int quad_order, plab_spectrum** out) {
  if (!out) return set_error(PLAB_ERR_INVALID, "null output");
  return guarded([&] {
    plab::OperatorConfig config;
    config.D = D;
    config.quad_order = quad_order > 0
                            ? quad_order
                            : std::max(256, static_cast<int>(std::ceil(32.0 * D)));
    auto spec = plab::eigen_spectrum(config);
    *out = new plab_spectrum{std::move(spec)};
  });
}

void plab_spectrum_free(plab_spectrum* s) { delete s; }

int plab_spectrum_count(const plab_spectrum* s) {
  return s ? static_cast<int>(s->spec.lambdas.size()) : 0;
}

plab_status plab_spectrum_eigenvalues(const plab_spectrum* s, double* buf, size_t cap) {
  if (!s || !buf) return set_error(PLAB_ERR_INVALID, "null argument");
  if (cap < s->spec.lambdas.size())
    return set_error(PLAB_ERR_INVALID, "buffer too small");
  std::memcpy(buf, s->spec.lambdas.data(), s->spec.lambdas.size() * sizeof(double));
  return PLAB_OK;
}

double plab_spectrum_trace(const plab_spectrum* s) { return s ? s->spec.trace : 0.0; }
double plab_spectrum_trace_sq(const plab_spectrum* s) {
  return s ? s->spec.trace_sq : 0.0;
}
double plab_spectrum_d(const plab_spectrum* s) { return s ? s->spec.D : 0.0; }
int plab_spectrum_quad_order(const plab_spectrum* s) {
  return s ? s->spec.quad_order : 0;
}

int plab_spectrum_count_between(const plab_spectrum* s, double lo, double hi) {
  if (!s) return -1;
  return s->spec.count_in(lo, hi);
}

plab_status plab_spectrum_landau(const plab_spectrum* s, int* index_half,
                                 int* orientation) {
  if (!s || !index_half || !orientation)
    return set_error(PLAB_ERR_INVALID, "null argument");
  auto rep = plab::landau_check(s->spec);
  *index_half = rep.index_half;
  if (rep.index_half == rep.floor_d)
    *orientation = 0;
  else if (rep.index_half == rep.floor_d + 1)
    *orientation = 1;
  else if (rep.index_half == rep.floor_d - 1)
    *orientation = 2;
  else
    *orientation = -1;
  return PLAB_OK;
}

plab_status plab_whitney_decompose(double D, double delta_stop, plab_whitney** out) {
  if (!out) return set_error(PLAB_ERR_INVALID, "null output");
  return guarded([&] { *out = new plab_whitney{plab::decompose(D, delta_stop)}; });
}

void plab_whitney_free(plab_whitney* w) { delete w; }

int plab_whitney_count(const plab_whitney* w) {
  return w ? static_cast<int>(w->dec.intervals.size()) : 0;
}

plab_status plab_whitney_interval(const plab_whitney* w, int i, double* x,
                                  double* delta, int* level) {
  if (!w || i < 0 || i >= static_cast<int>(w->dec.intervals.size()))
    return set_error(PLAB_ERR_INVALID, "interval index out of range");
  const auto& iv = w->dec.intervals[i];
  if (x) *x = iv.x;
  if (delta) *delta = iv.delta;
  if (level) *level = iv.level;
  return PLAB_OK;
}

double plab_whitney_covered_measure(const plab_whitney* w) {
  return w ? w->dec.covered_measure : 0.0;
}

int plab_whitney_count_at_scale(const plab_whitney* w, double delta_min) {
  if (!w) return -1;
  try {
    return plab::count_at_scale(w->dec, delta_min);
  } catch (const std::exception& e) {
    set_error(PLAB_ERR_INVALID, e.what());
    return -1;
  }
}

plab_status plab_basis_build(double D, double delta_stop, double xi_max, int m,
                             plab_basis** out) {
  if (!out) return set_error(PLAB_ERR_INVALID, "null output");
  return guarded([&] {
    auto dec = plab::decompose(D, delta_stop);
    plab::CutoffSpec cutoff(m > 0 ? m : 4);
    *out = new plab_basis{
        plab::Basis(std::move(dec), std::move(cutoff), xi_max > 0 ? xi_max : 4.0)};
  });
}

void plab_basis_free(plab_basis* b) { delete b; }

int plab_basis_atom_count(const plab_basis* b) {
  return b ? b->basis.atom_count() : 0;
}

plab_status plab_basis_atom(const plab_basis* b, int idx, int* j, int* k,
                            double* c_norm, double* xi) {
  if (!b || idx < 0 || idx >= b->basis.atom_count())
    return set_error(PLAB_ERR_INVALID, "atom index out of range");
  const auto& atom = b->basis.atoms()[idx];
  if (j) *j = atom.j;
  if (k) *k = atom.k;
  if (c_norm) *c_norm = atom.c_norm;
  if (xi) *xi = atom.xi;
  return PLAB_OK;
}

plab_status plab_basis_interval_of(const plab_basis* b, int j, double* x,
                                   double* delta) {
  if (!b || j < 0 ||
      j >= static_cast<int>(b->basis.decomposition().intervals.size()))
    return set_error(PLAB_ERR_INVALID, "interval index out of range");
  const auto& iv = b->basis.decomposition().intervals[j];
  if (x) *x = iv.x;
  if (delta) *delta = iv.delta;
  return PLAB_OK;
}

plab_status plab_basis_atom_eval(const plab_basis* b, int idx, double x, double* out) {
  if (!b || !out || idx < 0 || idx >= b->basis.atom_count())
    return set_error(PLAB_ERR_INVALID, "bad atom evaluation request");
  *out = b->basis.atom_value(idx, x);
  return PLAB_OK;
}

plab_status plab_basis_gram_stats(const plab_basis* b, double grid_rate,
                                  double* max_offdiag, double* max_diag_dev) {
  if (!b) return set_error(PLAB_ERR_INVALID, "null basis");
  return guarded([&] {
    auto gram = b->basis.gram_matrix({}, grid_rate);
    auto stats = plab::Basis::gram_stats(gram);
    if (max_offdiag) *max_offdiag = stats.max_offdiag;
    if (max_diag_dev) *max_diag_dev = stats.max_diag_dev;
  });
}

plab_status plab_partition_build(const plab_basis* b, double s, double delta_min,
                                 plab_partition** out) {
  if (!b || !out) return set_error(PLAB_ERR_INVALID, "null argument");
  return guarded([&] {
    plab::PartitionParams params;
    params.s = s;
    params.delta_min = delta_min;
    *out = new plab_partition{b, plab::build_partition(b->basis, params)};
  });
}

void plab_partition_free(plab_partition* p) { delete p; }

void plab_partition_counts(const plab_partition* p, int* n_low, int* n_med,
                           int* n_high) {
  if (!p) return;
  if (n_low) *n_low = static_cast<int>(p->part.low.size());
  if (n_med) *n_med = static_cast<int>(p->part.med.size());
  if (n_high) *n_high = static_cast<int>(p->part.high.size());
}

int plab_partition_class_of(const plab_partition* p, int atom_idx) {
  if (!p || atom_idx < 0 || atom_idx >= static_cast<int>(p->part.classes.size()))
    return -1;
  return static_cast<int>(p->part.classes[atom_idx]);
}

plab_status plab_partition_energies(const plab_partition* p, double* e_low_out,
                                    double* e_high_in) {
  if (!p) return set_error(PLAB_ERR_INVALID, "null partition");
  return guarded([&] {
    auto rep = plab::energy_sums(p->owner->basis, p->part);
    if (e_low_out) *e_low_out = rep.e_low_out;
    if (e_high_in) *e_high_in = rep.e_high_in;
  });
}

plab_status plab_partition_residuals(const plab_partition* p, double* s_total,
                                     double* s_high, double* s_low) {
  if (!p) return set_error(PLAB_ERR_INVALID, "null partition");
  return guarded([&] {
    auto rep = plab::residual_sums(p->owner->basis, p->part);
    if (s_total) *s_total = rep.s_total;
    if (s_high) *s_high = rep.s_high;
    if (s_low) *s_low = rep.s_low;
  });
}

plab_status plab_theorem_run(double D, double epsilon, double eta, int m,
                             int quad_order, plab_theorem** out) {
  if (!out) return set_error(PLAB_ERR_INVALID, "null output");
  return guarded([&] {
    auto rep = plab::run_theorem_pipeline(D, epsilon, eta > 0 ? eta : 0.25,
                                          m > 0 ? m : 4, quad_order);
    *out = new plab_theorem{rep};
  });
}

void plab_theorem_free(plab_theorem* t) { delete t; }

double plab_theorem_s(const plab_theorem* t) { return t ? t->rep.s : 0.0; }
double plab_theorem_delta_min(const plab_theorem* t) {
  return t ? t->rep.delta_min : 0.0;
}
int plab_theorem_m_eps(const plab_theorem* t) { return t ? t->rep.m_eps : 0; }
int plab_theorem_gamma_med(const plab_theorem* t) {
  return t ? t->rep.gamma_med_count : 0;
}
double plab_theorem_k_bound(const plab_theorem* t) { return t ? t->rep.k_bound : 0.0; }
double plab_theorem_k_conjectured(const plab_theorem* t) {
  return t ? t->rep.k_conjectured : 0.0;
}
double plab_theorem_residual(const plab_theorem* t) {
  return t ? t->rep.residual : 0.0;
}
double plab_theorem_residual_bound(const plab_theorem* t) {
  return t ? t->rep.residual_bound : 0.0;
}
double plab_theorem_e_low_out(const plab_theorem* t) {
  return t ? t->rep.e_low_out : 0.0;
}
double plab_theorem_e_high_in(const plab_theorem* t) {
  return t ? t->rep.e_high_in : 0.0;
}

void plab_theorem_mid_range(const plab_theorem* t, int* lo, int* hi) {
  if (!t) return;
  if (lo) *lo = t->rep.mid_lo;
  if (hi) *hi = t->rep.mid_hi;
}

void plab_theorem_window(const plab_theorem* t, double* lo, double* hi) {
  if (!t) return;
  if (lo) *lo = t->rep.window_lo;
  if (hi) *hi = t->rep.window_hi;
}

int plab_theorem_landau_index(const plab_theorem* t) {
  return t ? t->rep.landau_index : 0;
}

int plab_theorem_pass_flags(const plab_theorem* t) {
  if (!t) return 0;
  return (t->rep.pass_residual ? 1 : 0) | (t->rep.pass_count ? 2 : 0) |
         (t->rep.pass_window ? 4 : 0);
}

plab_status plab_choose_parameters(double D, double epsilon, double eta, double* s,
                                   double* delta_min) {
  if (!s || !delta_min) return set_error(PLAB_ERR_INVALID, "null output");
  return guarded([&] {
    auto [sv, dm] = plab::choose_parameters(D, epsilon, eta > 0 ? eta : 0.25,
                                            plab::kCalibration);
    *s = sv;
    *delta_min = dm;
  });
}

plab_status plab_k_bound(double D, double epsilon, double eta, double* k) {
  if (!k) return set_error(PLAB_ERR_INVALID, "null output");
  return guarded([&] {
    *k = plab::theorem_bound_K(D, epsilon, eta > 0 ? eta : 0.25,
                               plab::kCalibration.A_eta);
  });
}

plab_status plab_verify_run(double D, double epsilon, double eta, int m,
                            int quad_order, double grid_rate,
                            unsigned long long seed, const char* inject_fault,
                            plab_verify** out) {
  if (!out) return set_error(PLAB_ERR_INVALID, "null output");
  return guarded([&] {
    plab::VerifyOptions opt;
    opt.D = D;
    opt.epsilon = epsilon;
    opt.eta = eta > 0 ? eta : 0.25;
    opt.m = m > 0 ? m : 4;
    opt.quad_order = quad_order;
    opt.grid_rate = grid_rate > 0 ? grid_rate : 64.0;
    opt.seed = seed;
    opt.inject_fault = inject_fault ? inject_fault : "";
    *out = new plab_verify{plab::run_verify(opt)};
  });
}

void plab_verify_free(plab_verify* v) { delete v; }

int plab_verify_count(const plab_verify* v) {
  return v ? static_cast<int>(v->checks.size()) : 0;
}

plab_status plab_verify_check(const plab_verify* v, int i, const char** name,
                              double* measured, double* bound, int* pass) {
  if (!v || i < 0 || i >= static_cast<int>(v->checks.size()))
    return set_error(PLAB_ERR_INVALID, "check index out of range");
  const auto& c = v->checks[i];
  if (name) *name = c.name.c_str();
  if (measured) *measured = c.measured;
  if (bound) *bound = c.bound;
  if (pass) *pass = c.pass ? 1 : 0;
  return PLAB_OK;
}

int plab_verify_all_pass(const plab_verify* v) {
  return v && plab::all_pass(v->checks) ? 1 : 0;
}

}  // extern "C"
