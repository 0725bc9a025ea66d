#include "partition.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "errors.hpp"
#include "parallel.hpp"

namespace plab {

namespace {

double dist_to_complement(double xi) {  // dist(xi, R \ J), J = [-1/2, 1/2]
  double in = 0.5 - std::abs(xi);
  return in > 0 ? in : 0.0;
}

double dist_to_band(double xi) {  // dist(xi, J)
  double out = std::abs(xi) - 0.5;
  return out > 0 ? out : 0.0;
}

}  // namespace

void PartitionParams::validate() const {
  if (!(s >= 1.0)) throw InvalidParameter("PartitionParams: s must be >= 1");
  if (!(delta_min > 0.0 && delta_min < 1.0))
    throw InvalidParameter("PartitionParams: delta_min must be in (0, 1)");
  if (!(epsilon > 0.0 && epsilon < 0.5))
    throw InvalidParameter("PartitionParams: epsilon must be in (0, 1/2)");
  if (!(eta > 0.0 && eta <= 0.5))
    throw InvalidParameter("PartitionParams: eta must be in (0, 1/2]");
}

GammaClass classify_center(double delta_j, double xi, const PartitionParams& params) {
  if (delta_j < params.delta_min) return GammaClass::high;
  double margin = params.s / delta_j;
  if (dist_to_complement(xi) >= margin) return GammaClass::low;
  if (dist_to_band(xi) >= margin) return GammaClass::high;
  return GammaClass::med;
}

GammaPartition build_partition(const Basis& basis, const PartitionParams& params) {
  params.validate();
  GammaPartition part;
  part.params = params;
  const auto& atoms = basis.atoms();
  part.classes.resize(atoms.size());
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    double delta = basis.decomposition().intervals[atoms[i].j].delta;
    part.classes[i] = classify_center(delta, atoms[i].xi, params);
    switch (part.classes[i]) {
      case GammaClass::low: part.low.push_back(static_cast<int>(i)); break;
      case GammaClass::med: part.med.push_back(static_cast<int>(i)); break;
      case GammaClass::high: part.high.push_back(static_cast<int>(i)); break;
    }
  }
  return part;
}

ClassCounts count_classes(const Basis& basis, const GammaPartition& partition) {
  const auto& ivs = basis.decomposition().intervals;
  ClassCounts out;
  out.per_interval.resize(ivs.size());
  for (std::size_t j = 0; j < ivs.size(); ++j) {
    out.per_interval[j].j = static_cast<int>(j);
    out.per_interval[j].delta = ivs[j].delta;
  }
  const auto& atoms = basis.atoms();
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    auto& row = out.per_interval[atoms[i].j];
    switch (partition.classes[i]) {
      case GammaClass::low: ++row.low; ++out.n_low; break;
      case GammaClass::med: ++row.med; ++out.n_med; break;
      case GammaClass::high: ++row.high; ++out.n_high; break;
    }
  }
  double s = partition.params.s;
  for (const auto& row : out.per_interval) {
    if (row.med > 10.0 * s)
      throw AssertionFailure("count_classes: med count exceeds 10s on interval " +
                             std::to_string(row.j));
    if (row.delta >= partition.params.delta_min) {
      if (row.delta < s && row.low != 0)
        throw AssertionFailure("count_classes: low count nonzero on short interval " +
                               std::to_string(row.j));
      if (row.delta >= s) {
        double lo_bound = row.delta - 2.0 * s - 0.5;
        double hi_bound = row.delta + 1.0;
        if (row.low < lo_bound || row.low > hi_bound)
          throw AssertionFailure("count_classes: low count out of range on interval " +
                                 std::to_string(row.j));
      }
    }
  }
  return out;
}

EnergyReport energy_sums(const Basis& basis, const GammaPartition& partition) {
  EnergyReport rep;
  rep.n_low = static_cast<int>(partition.low.size());
  rep.n_high = static_cast<int>(partition.high.size());
  rep.analytic_tail_scale = partition.params.delta_min;

  std::vector<double> low_vals(partition.low.size());
  parallel_for(partition.low.size(), [&](std::size_t i) {
    low_vals[i] = basis.out_band_energy(partition.low[i]);
  });
  std::vector<double> high_vals(partition.high.size());
  parallel_for(partition.high.size(), [&](std::size_t i) {
    high_vals[i] = basis.in_band_energy(partition.high[i]);
  });
  for (double v : low_vals) rep.e_low_out += v;
  for (double v : high_vals) rep.e_high_in += v;
  return rep;
}

ResidualReport residual_sums(const Basis& basis, const GammaPartition& partition) {
  ResidualReport rep;
  std::vector<double> high_vals(partition.high.size());
  parallel_for(partition.high.size(), [&](std::size_t i) {
    high_vals[i] = basis.tphi_norm_sq(partition.high[i]);
  });
  std::vector<double> low_vals(partition.low.size());
  parallel_for(partition.low.size(), [&](std::size_t i) {
    int idx = partition.low[i];
    double e_in = basis.in_band_energy(idx);
    double t_norm = basis.tphi_norm_sq(idx);
    // ||T Phi - Phi||^2 = 1 - 2 <T Phi, Phi> + ||T Phi||^2 with <T Phi, Phi> = e_in
    low_vals[i] = 1.0 - 2.0 * e_in + t_norm;
  });
  for (double v : high_vals) rep.s_high += v;
  for (double v : low_vals) rep.s_low += v;
  rep.s_total = rep.s_high + rep.s_low;

  EnergyReport energy = energy_sums(basis, partition);
  rep.energy_bound = energy.e_high_in + energy.e_low_out;
  rep.within_bound = rep.s_total <= rep.energy_bound + 1e-8;
  return rep;
}

ShellProfile dyadic_shell_profile(const Basis& basis, int j, const PartitionParams& params) {
  const auto& iv = basis.decomposition().intervals[j];
  if (iv.delta < params.delta_min)
    throw InvalidParameter("dyadic_shell_profile: interval below delta_min");
  ShellProfile prof;
  auto bump = [](std::vector<int>& v, int ell) {
    if (ell >= static_cast<int>(v.size())) v.resize(ell + 1, 0);
    ++v[ell];
  };
  double margin = params.s / iv.delta;
  for (const auto& atom : basis.atoms()) {
    if (atom.j != j) continue;
    double dl = dist_to_complement(atom.xi);
    if (dl >= margin) bump(prof.low_shells, static_cast<int>(std::floor(std::log2(dl / margin))));
    double dh = dist_to_band(atom.xi);
    if (dh >= margin) bump(prof.high_shells, static_cast<int>(std::floor(std::log2(dh / margin))));
  }
  return prof;
}

}  // namespace plab
