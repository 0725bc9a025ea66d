/* plungelab — C API for the time-frequency localization toolkit.
 *
 * The library studies the operator T = R_I P_J R_I (time restriction to
 * I = [-D/2, D/2], band restriction to J = [-1/2, 1/2]): its eigenvalue
 * plunge, a local cosine wave-packet basis over the Whitney decomposition of
 * I, and the counting/energy estimates that localize the plunge region.
 *
 * All objects are opaque handles created by *_compute / *_build / *_run
 * calls and released with the matching *_free. Functions return PLAB_OK on
 * success; on failure the handle output is untouched and plab_last_error()
 * describes the problem (thread-local).
 */

#ifndef PLUNGELAB_H
#define PLUNGELAB_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum plab_status {
  PLAB_OK = 0,
  PLAB_ERR_INVALID = 1,  /* invalid argument or configuration */
  PLAB_ERR_NUMERIC = 2,  /* quadrature / eigensolver / fit failure */
  PLAB_ERR_GRID = 3,     /* grid too coarse for the requested object */
  PLAB_ERR_INTERNAL = 4
} plab_status;

const char* plab_version(void);
const char* plab_last_error(void);

/* ---- spectrum of the localization operator ---- */

typedef struct plab_spectrum plab_spectrum;

/* quad_order = 0 picks max(256, ceil(32 D)). Requires D >= 2. */
plab_status plab_spectrum_compute(double D, int quad_order, plab_spectrum** out);
void plab_spectrum_free(plab_spectrum* s);

int plab_spectrum_count(const plab_spectrum* s);
plab_status plab_spectrum_eigenvalues(const plab_spectrum* s, double* buf, size_t cap);
double plab_spectrum_trace(const plab_spectrum* s);
double plab_spectrum_trace_sq(const plab_spectrum* s);
double plab_spectrum_d(const plab_spectrum* s);
int plab_spectrum_quad_order(const plab_spectrum* s);
/* #eigenvalues strictly inside (lo, hi) */
int plab_spectrum_count_between(const plab_spectrum* s, double lo, double hi);
/* i* = #{lambda >= 1/2} (1-based separation index); orientation:
 * 0 = i* == [D], 1 = i* == [D]+1, 2 = i* == [D]-1, -1 = none of these. */
plab_status plab_spectrum_landau(const plab_spectrum* s, int* index_half,
                                 int* orientation);

/* ---- Whitney decomposition ---- */

typedef struct plab_whitney plab_whitney;

plab_status plab_whitney_decompose(double D, double delta_stop, plab_whitney** out);
void plab_whitney_free(plab_whitney* w);

int plab_whitney_count(const plab_whitney* w);
plab_status plab_whitney_interval(const plab_whitney* w, int i, double* x,
                                  double* delta, int* level);
double plab_whitney_covered_measure(const plab_whitney* w);
/* #{j : delta_j >= delta_min}; negative on error */
int plab_whitney_count_at_scale(const plab_whitney* w, double delta_min);

/* ---- local cosine basis ---- */

typedef struct plab_basis plab_basis;

/* xi_max <= 0 picks the default analysis band (4). m is the cutoff sharpness
 * exponent (default 4 when m <= 0). */
plab_status plab_basis_build(double D, double delta_stop, double xi_max, int m,
                             plab_basis** out);
void plab_basis_free(plab_basis* b);

int plab_basis_atom_count(const plab_basis* b);
plab_status plab_basis_atom(const plab_basis* b, int idx, int* j, int* k,
                            double* c_norm, double* xi);
plab_status plab_basis_interval_of(const plab_basis* b, int j, double* x,
                                   double* delta);
plab_status plab_basis_atom_eval(const plab_basis* b, int idx, double x, double* out);
plab_status plab_basis_gram_stats(const plab_basis* b, double grid_rate,
                                  double* max_offdiag, double* max_diag_dev);

/* ---- index partition and energies ---- */

typedef struct plab_partition plab_partition;

/* The partition borrows the basis; keep the basis alive until the partition
 * is freed. */
plab_status plab_partition_build(const plab_basis* b, double s, double delta_min,
                                 plab_partition** out);
void plab_partition_free(plab_partition* p);

void plab_partition_counts(const plab_partition* p, int* n_low, int* n_med,
                           int* n_high);
/* class of one atom: 0 low, 1 med, 2 high; negative on error */
int plab_partition_class_of(const plab_partition* p, int atom_idx);
plab_status plab_partition_energies(const plab_partition* p, double* e_low_out,
                                    double* e_high_in);
plab_status plab_partition_residuals(const plab_partition* p, double* s_total,
                                     double* s_high, double* s_low);

/* ---- end-to-end theorem pipeline ---- */

typedef struct plab_theorem plab_theorem;

plab_status plab_theorem_run(double D, double epsilon, double eta, int m,
                             int quad_order, plab_theorem** out);
void plab_theorem_free(plab_theorem* t);

double plab_theorem_s(const plab_theorem* t);
double plab_theorem_delta_min(const plab_theorem* t);
int plab_theorem_m_eps(const plab_theorem* t);
int plab_theorem_gamma_med(const plab_theorem* t);
double plab_theorem_k_bound(const plab_theorem* t);
double plab_theorem_k_conjectured(const plab_theorem* t);
double plab_theorem_residual(const plab_theorem* t);
double plab_theorem_residual_bound(const plab_theorem* t);
double plab_theorem_e_low_out(const plab_theorem* t);
double plab_theorem_e_high_in(const plab_theorem* t);
void plab_theorem_mid_range(const plab_theorem* t, int* lo, int* hi);
void plab_theorem_window(const plab_theorem* t, double* lo, double* hi);
int plab_theorem_landau_index(const plab_theorem* t);
/* flags: bit 0 residual, bit 1 count, bit 2 window */
int plab_theorem_pass_flags(const plab_theorem* t);

/* Calibrated parameter choices for the pipeline at (D, epsilon, eta):
 * delta_min = eps^3 / (2 C_eta), s = max(1, A_eta (log(log D / eps))^{1/(1-eta)}). */
plab_status plab_choose_parameters(double D, double epsilon, double eta, double* s,
                                   double* delta_min);
/* Index-window half-width K = A_eta (log(log D / eps))^{1+eta} log(D / eps). */
plab_status plab_k_bound(double D, double epsilon, double eta, double* k);

/* ---- named verification battery ---- */

typedef struct plab_verify plab_verify;

/* inject_fault: NULL/"" for a clean run, "cjk" corrupts one normalization
 * constant by 10% (test hook). */
plab_status plab_verify_run(double D, double epsilon, double eta, int m,
                            int quad_order, double grid_rate,
                            unsigned long long seed, const char* inject_fault,
                            plab_verify** out);
void plab_verify_free(plab_verify* v);

int plab_verify_count(const plab_verify* v);
plab_status plab_verify_check(const plab_verify* v, int i, const char** name,
                              double* measured, double* bound, int* pass);
int plab_verify_all_pass(const plab_verify* v);

#ifdef __cplusplus
}
#endif

#endif /* PLUNGELAB_H */
