#include "analysis.hpp"

#include <cmath>
#include <random>

#include "errors.hpp"

namespace plab {

void AbstractInstance::validate() const {
  const auto n = T.rows();
  if (T.cols() != n || basis.rows() != n || basis.cols() != n)
    throw InvalidParameter("AbstractInstance: shape mismatch");
  if (static_cast<Eigen::Index>(labels.size()) != n)
    throw InvalidParameter("AbstractInstance: labels incomplete");
  for (int l : labels)
    if (l < 0 || l > 2) throw InvalidParameter("AbstractInstance: bad label");
  if ((T - T.transpose()).cwiseAbs().maxCoeff() > 1e-10)
    throw InvalidParameter("AbstractInstance: T not symmetric");
  Eigen::MatrixXd gram = basis.transpose() * basis;
  gram.diagonal().array() -= 1.0;
  if (gram.cwiseAbs().maxCoeff() > 1e-12 * 10)
    throw InvalidParameter("AbstractInstance: basis not orthonormal");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
  if (es.eigenvalues().maxCoeff() > 1.0 + 1e-12 * 10 ||
      es.eigenvalues().minCoeff() < -1e-10)
    throw InvalidParameter("AbstractInstance: T not a PSD contraction");
  if (!(epsilon > 0.0 && epsilon < 0.5))
    throw InvalidParameter("AbstractInstance: epsilon out of range");
}

MainLemmaReport check_main_lemma(const AbstractInstance& inst) {
  MainLemmaReport rep;
  const auto n = inst.T.rows();
  for (Eigen::Index k = 0; k < n; ++k) {
    Eigen::VectorXd phi = inst.basis.col(k);
    Eigen::VectorXd tphi = inst.T * phi;
    if (inst.labels[k] == 0)
      rep.h_sum += tphi.squaredNorm();
    else if (inst.labels[k] == 2)
      rep.h_sum += (tphi - phi).squaredNorm();
    else
      ++rep.i1_count;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(inst.T);
  if (es.info() != Eigen::Success) throw EigenFailure("check_main_lemma: eigensolver");
  double eps = inst.epsilon;
  for (Eigen::Index i = 0; i < n; ++i) {
    double l = es.eigenvalues()[i];
    if (l > eps + 1e-12 && l < 1.0 - eps - 1e-12) ++rep.m_eps;
  }
  rep.hypothesis_holds = rep.h_sum <= eps * eps * eps;
  rep.conclusion_holds = rep.m_eps <= 2 * rep.i1_count;
  return rep;
}

namespace {

double next_uniform(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

double next_gaussian(std::mt19937_64& gen) {
  // Box-Muller on raw uniform bits; keeps streams identical across platforms.
  double u1 = 0.0;
  do { u1 = next_uniform(gen); } while (u1 <= 1e-300);
  double u2 = next_uniform(gen);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
}

Eigen::MatrixXd haar_orthogonal(std::mt19937_64& gen, int n) {
  Eigen::MatrixXd g(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) g(r, c) = next_gaussian(gen);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ();
  Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int c = 0; c < n; ++c)
    if (r(c, c) < 0) q.col(c) *= -1.0;
  return q;
}

}  // namespace

AbstractInstance random_instance(std::uint64_t seed, int dim_min, int dim_max) {
  if (dim_min < 1 || dim_max < dim_min)
    throw InvalidParameter("random_instance: bad dimension range");
  std::mt19937_64 gen(seed * 0x9E3779B97F4A7C15ULL + 0xD1B54A32D192ED03ULL);
  int n = dim_min + static_cast<int>(gen() % static_cast<std::uint64_t>(dim_max - dim_min + 1));

  AbstractInstance inst;
  inst.epsilon = 0.05 + 0.40 * next_uniform(gen);

  Eigen::VectorXd lambda(n);
  int flavor = static_cast<int>(gen() % 3);
  for (int i = 0; i < n; ++i) {
    double u = next_uniform(gen);
    if (flavor == 2) {
      // push eigenvalues toward {0, 1}: more instances satisfy the hypothesis
      u = (u < 0.5) ? 0.5 * std::pow(2.0 * u, 3.0) : 1.0 - 0.5 * std::pow(2.0 - 2.0 * u, 3.0);
    }
    lambda[i] = u;
  }
  Eigen::MatrixXd q = haar_orthogonal(gen, n);
  inst.T = q * lambda.asDiagonal() * q.transpose();
  inst.T = 0.5 * (inst.T + inst.T.transpose()).eval();

  inst.labels.resize(n);
  if (flavor == 0) {
    // fully random basis and labels (hypothesis rarely holds: vacuous cases)
    inst.basis = haar_orthogonal(gen, n);
    for (int i = 0; i < n; ++i) inst.labels[i] = static_cast<int>(gen() % 3);
  } else {
    // aligned with the eigenbasis, labels follow the eigenvalues
    inst.basis = q;
    double eps = inst.epsilon;
    for (int i = 0; i < n; ++i) {
      if (lambda[i] >= 1.0 - eps)
        inst.labels[i] = 2;
      else if (lambda[i] <= eps)
        inst.labels[i] = 0;
      else
        inst.labels[i] = 1;
    }
    if (flavor == 2) {
      // small random rotation away from perfect alignment
      Eigen::MatrixXd skew(n, n);
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) skew(r, c) = next_gaussian(gen);
      skew = 0.5 * (skew - skew.transpose()).eval() * (0.02 / std::sqrt(n));
      Eigen::MatrixXd rot = (Eigen::MatrixXd::Identity(n, n) + skew +
                             0.5 * skew * skew);
      Eigen::HouseholderQR<Eigen::MatrixXd> qr(rot);
      Eigen::MatrixXd qq = qr.householderQ();
      inst.basis = inst.basis * qq;
    }
  }
  return inst;
}

std::pair<double, double> choose_parameters(double D, double epsilon, double eta,
                                            const CalibrationConstants& constants) {
  if (!(D >= 2.0)) throw InvalidParameter("choose_parameters: D must be >= 2");
  if (!(epsilon > 0.0 && epsilon < 0.5))
    throw InvalidParameter("choose_parameters: epsilon must be in (0, 1/2)");
  if (!(eta > 0.0 && eta <= 0.5))
    throw InvalidParameter("choose_parameters: eta must be in (0, 1/2]");
  double delta_min = epsilon * epsilon * epsilon / (2.0 * constants.C_eta);
  double arg = std::log(D) / epsilon;
  double s = constants.A_eta * std::pow(std::log(arg), 1.0 / (1.0 - eta));
  if (!(s >= 1.0)) s = 1.0;
  return {s, delta_min};
}

double theorem_bound_K(double D, double epsilon, double eta, double A_eta) {
  if (!(D >= 2.0) || !(epsilon > 0.0 && epsilon < 0.5) || !(eta > 0.0 && eta <= 0.5))
    throw InvalidParameter("theorem_bound_K: bad parameters");
  return A_eta * std::pow(std::log(std::log(D) / epsilon), 1.0 + eta) *
         std::log(D / epsilon);
}

TheoremReport run_theorem_pipeline(double D, double epsilon, double eta, int m,
                                   int quad_order, const CalibrationConstants& constants) {
  if (!(D >= 2.0 && D <= 128.0))
    throw InvalidParameter("run_theorem_pipeline: D must be in [2, 128]");
  if (!(epsilon >= 1e-3 && epsilon < 0.5))
    throw InvalidParameter("run_theorem_pipeline: epsilon must be in [1e-3, 1/2)");

  TheoremReport rep;
  rep.D = D;
  rep.epsilon = epsilon;
  rep.eta = eta;
  auto [s, delta_min] = choose_parameters(D, epsilon, eta, constants);
  rep.s = s;
  rep.delta_min = delta_min;
  rep.residual_bound = epsilon * epsilon * epsilon;
  rep.k_bound = theorem_bound_K(D, epsilon, eta, constants.A_eta);
  rep.k_conjectured = std::log(D) * std::log(1.0 / epsilon);

  auto decomp = decompose(D, delta_min);
  Basis basis(std::move(decomp), CutoffSpec(m));
  PartitionParams params;
  params.s = s;
  params.delta_min = delta_min;
  params.epsilon = epsilon;
  params.eta = eta;
  params.constants = constants;
  auto partition = build_partition(basis, params);
  auto counts = count_classes(basis, partition);
  rep.n_low = counts.n_low;
  rep.n_med = counts.n_med;
  rep.n_high = counts.n_high;
  rep.gamma_med_count = counts.n_med;

  auto residual = residual_sums(basis, partition);
  rep.residual = residual.s_total;
  auto energy = energy_sums(basis, partition);
  rep.e_low_out = energy.e_low_out;
  rep.e_high_in = energy.e_high_in;

  OperatorConfig config;
  config.D = D;
  config.quad_order = quad_order > 0
                          ? quad_order
                          : std::max(256, static_cast<int>(std::ceil(16.0 * D)));
  auto spectrum = eigen_spectrum(config);
  rep.spectrum_size = static_cast<int>(spectrum.lambdas.size());
  rep.m_eps = spectrum.count_in(epsilon, 1.0 - epsilon);
  rep.landau_index = landau_check(spectrum).index_half;

  rep.window_lo = D - 2.0 * rep.m_eps;
  rep.window_hi = D + 2.0 * rep.m_eps;
  rep.mid_lo = 0;
  rep.mid_hi = 0;
  bool window_ok = true;
  for (std::size_t i = 0; i < spectrum.lambdas.size(); ++i) {
    double l = spectrum.lambdas[i];
    if (l > epsilon + 1e-12 && l < 1.0 - epsilon - 1e-12) {
      int idx = static_cast<int>(i) + 1;  // 1-based
      if (rep.mid_lo == 0) rep.mid_lo = idx;
      rep.mid_hi = idx;
      if (idx < rep.window_lo || idx > rep.window_hi) window_ok = false;
    }
  }
  rep.pass_residual = rep.residual <= rep.residual_bound;
  rep.pass_count = rep.m_eps <= 2 * rep.gamma_med_count;
  rep.pass_window = window_ok;
  return rep;
}

}  // namespace plab
