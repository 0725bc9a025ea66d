#include "verify.hpp"

#include <algorithm>
#include <cmath>

#include "analysis.hpp"
#include "cutoff.hpp"
#include "errors.hpp"
#include "localcosine.hpp"
#include "partition.hpp"
#include "spectral.hpp"
#include "whitney.hpp"

namespace plab {

namespace {

void add(std::vector<CheckResult>& out, const std::string& name, double measured,
         double bound, bool pass) {
  out.push_back({name, measured, bound, pass});
}

}  // namespace

std::vector<CheckResult> run_verify(const VerifyOptions& opt) {
  std::vector<CheckResult> out;

  // cutoff
  CutoffSpec cutoff(opt.m);
  {
    std::vector<double> grid;
    for (int i = 0; i <= 2000; ++i) grid.push_back(-1.5 + 3.0 * i / 2000.0);
    auto pou = verify_partition_of_unity(cutoff, grid, 1e-9);
    add(out, "cutoff.partition_of_unity", pou.max_deviation, 1e-9, pou.pass);
    double support_dev = std::max(std::abs(cutoff.eval_theta(-1.0)),
                                  std::abs(cutoff.eval_theta(1.0) - 1.0));
    add(out, "cutoff.support", support_dev, 0.0, support_dev == 0.0);
  }

  // whitney
  double delta_stop = 1.0 / 32.0;
  auto decomp = decompose(opt.D, delta_stop);
  {
    bool w_ok = true;
    double worst = 0.0;
    for (const auto& iv : decomp.intervals) {
      double dist = decomp.boundary_dist(iv);
      if (!(iv.delta <= dist && dist <= 5.0 * iv.delta)) w_ok = false;
      worst = std::max(worst, dist / iv.delta);
    }
    add(out, "whitney.w2", worst, 5.0, w_ok && worst <= 5.0);
    bool disjoint = true;
    for (std::size_t i = 0; i + 1 < decomp.intervals.size(); ++i)
      if (decomp.intervals[i].right() > decomp.intervals[i + 1].x) disjoint = false;
    add(out, "whitney.disjoint", disjoint ? 0.0 : 1.0, 0.0, disjoint);
    double gap = decomp.D - decomp.covered_measure;
    add(out, "whitney.coverage", gap, 8.0 * delta_stop, gap <= 8.0 * delta_stop);
  }

  // basis orthonormality
  {
    Basis basis(decompose(opt.D, delta_stop), cutoff);
    if (opt.inject_fault == "cjk")
      basis.corrupt_normalization(basis.atom_count() / 2, 1.10);
    auto gram = basis.gram_matrix({}, opt.grid_rate);
    auto stats = Basis::gram_stats(gram);
    add(out, "basis.gram_diag", stats.max_diag_dev, 1e-6, stats.max_diag_dev <= 1e-6);
    add(out, "basis.gram_offdiag", stats.max_offdiag, 1e-5, stats.max_offdiag <= 1e-5);
  }

  // spectrum identities
  {
    OperatorConfig config;
    config.D = opt.D;
    config.quad_order = opt.quad_order > 0
                            ? opt.quad_order
                            : std::max(256, static_cast<int>(std::ceil(32.0 * opt.D)));
    auto spec = eigen_spectrum(config);
    double trace_err = std::abs(spec.trace - opt.D) / opt.D;
    add(out, "spectral.trace", trace_err, 1e-8, trace_err <= 1e-8);
    // second moment against the diagonal reduction
    // int_I int_I K^2(x - y) dx dy = int_{-D}^{D} (D - |t|) K^2(t) dt
    double moment = integrate_adaptive(
        [&](double t) {
          double k = sinc_kernel(t, 0.0);
          return 2.0 * (opt.D - t) * k * k;
        },
        0.0, opt.D, 1e-10);
    double moment_err = std::abs(spec.trace_sq - moment);
    add(out, "spectral.trace_sq", moment_err, 1e-6, moment_err <= 1e-6);
    add(out, "spectral.norm_bound", spec.lambdas.front(), 1.0 + 1e-8,
        spec.lambdas.front() <= 1.0 + 1e-8);
    auto landau = landau_check(spec);
    add(out, "spectral.landau_midpoint", landau.index_half,
        static_cast<double>(landau.floor_d), landau.pass);
  }

  // partition count bounds and energy monotonicity in the margin
  {
    Basis basis(decompose(opt.D, delta_stop), cutoff);
    bool counts_ok = true;
    double med_ratio = 0.0;
    double prev_low = -1.0, prev_high = -1.0, worst_increase = 0.0;
    for (double s : {1.0, 2.0, 4.0}) {
      PartitionParams params;
      params.s = s;
      params.delta_min = delta_stop;
      params.epsilon = opt.epsilon;
      params.eta = opt.eta;
      try {
        auto part = build_partition(basis, params);
        auto counts = count_classes(basis, part);
        for (const auto& row : counts.per_interval)
          med_ratio = std::max(med_ratio, row.med / (10.0 * s));
        auto energy = energy_sums(basis, part);
        if (prev_low >= 0.0) {
          worst_increase = std::max(worst_increase, energy.e_low_out - prev_low);
          worst_increase = std::max(worst_increase, energy.e_high_in - prev_high);
        }
        prev_low = energy.e_low_out;
        prev_high = energy.e_high_in;
      } catch (const AssertionFailure&) {
        counts_ok = false;
      }
    }
    add(out, "partition.local_counts", med_ratio, 1.0, counts_ok && med_ratio <= 1.0);
    add(out, "partition.energy_monotone", worst_increase, 1e-12,
        worst_increase <= 1e-12);
  }

  // main lemma sampling
  {
    int violations = 0;
    for (int i = 0; i < opt.lemma_samples; ++i) {
      auto inst = random_instance(opt.seed * 1000003ULL + static_cast<std::uint64_t>(i));
      auto rep = check_main_lemma(inst);
      if (rep.hypothesis_holds && !rep.conclusion_holds) ++violations;
    }
    add(out, "analysis.main_lemma", violations, 0.0, violations == 0);
  }

  // end-to-end pipeline
  {
    auto rep = run_theorem_pipeline(opt.D, opt.epsilon, opt.eta, opt.m, opt.quad_order);
    add(out, "pipeline.residual", rep.residual, rep.residual_bound, rep.pass_residual);
    add(out, "pipeline.m_eps_bound", rep.m_eps, 2.0 * rep.gamma_med_count, rep.pass_count);
    add(out, "pipeline.mid_window", rep.mid_hi, rep.window_hi, rep.pass_window);
  }

  return out;
}

bool all_pass(const std::vector<CheckResult>& checks) {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

}  // namespace plab
