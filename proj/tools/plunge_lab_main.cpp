// plunge-lab: CLI front end over the plungelab C API.
//
// Exit codes: 0 success, 1 failed verification assertions, 2 invalid
// configuration, 3 numerical failure.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "emit.hpp"
#include "plungelab.h"

namespace fs = std::filesystem;

namespace {

struct Options {
  double D = 8.0;
  double epsilon = 0.1;
  double eta = 0.25;
  int m = 4;
  int quad_order = 0;
  double grid_rate = 64.0;
  std::uint64_t seed = 1;
  std::string out_dir = ".";
  std::vector<std::string> formats = {"json", "csv"};
  bool log_y = false;
  std::string inject_fault;
};

bool wants(const Options& opt, const std::string& f) {
  for (const auto& s : opt.formats)
    if (s == f) return true;
  return false;
}

int fail_with(plab_status status) {
  std::fprintf(stderr, "plunge-lab: %s\n", plab_last_error());
  return status == PLAB_ERR_INVALID ? 2 : 3;
}

emit::Json config_json(const Options& opt, const std::string& command) {
  auto cfg = emit::Json::object();
  cfg.str("command", command)
      .num("D", opt.D)
      .num("epsilon", opt.epsilon)
      .num("eta", opt.eta)
      .num("m", opt.m)
      .num("quad_order", opt.quad_order)
      .num("grid_rate", opt.grid_rate)
      .num("seed", static_cast<double>(opt.seed));
  return cfg;
}

const char* orientation_name(int o) {
  switch (o) {
    case 0: return "standard";
    case 1: return "shifted+1";
    case 2: return "literal";
    default: return "none";
  }
}

int cmd_spectrum(const Options& opt) {
  plab_spectrum* spec = nullptr;
  if (auto st = plab_spectrum_compute(opt.D, opt.quad_order, &spec); st != PLAB_OK)
    return fail_with(st);
  int n = plab_spectrum_count(spec);
  std::vector<double> lambdas(n);
  plab_spectrum_eigenvalues(spec, lambdas.data(), lambdas.size());
  int landau_index = 0, orientation = -1;
  plab_spectrum_landau(spec, &landau_index, &orientation);

  if (wants(opt, "csv")) {
    std::string csv = "index,lambda\n";
    for (int i = 0; i < n; ++i)
      csv += std::to_string(i + 1) + "," + emit::fmt_double(lambdas[i]) + "\n";
    emit::write_file(fs::path(opt.out_dir) / "eigenvalues.csv", csv);
  }
  if (wants(opt, "json")) {
    auto lam = emit::Json::array();
    for (int i = 0; i < n; ++i) lam.push_num(lambdas[i]);
    auto sp = emit::Json::object();
    sp.num("D", plab_spectrum_d(spec))
        .num("quad_order", plab_spectrum_quad_order(spec))
        .num("trace", plab_spectrum_trace(spec))
        .num("trace_sq", plab_spectrum_trace_sq(spec))
        .num("landau_index", landau_index)
        .str("landau_orientation", orientation_name(orientation))
        .num("count", n)
        .child("lambdas", lam);
    auto root = emit::Json::object();
    root.child("config", config_json(opt, "spectrum"))
        .str("version", plab_version())
        .child("spectrum", sp);
    emit::write_file(fs::path(opt.out_dir) / "spectrum.json", root.render() + "\n");
  }
  if (wants(opt, "svg")) {
    double k = 0.0;
    plab_k_bound(opt.D, opt.epsilon, opt.eta, &k);
    emit::write_file(fs::path(opt.out_dir) / "plunge.svg",
                     emit::plunge_svg(lambdas, opt.D - k, opt.D + k, opt.log_y));
  }
  plab_spectrum_free(spec);
  return 0;
}

int cmd_basis(const Options& opt) {
  double s = 0.0, delta_min = 0.0;
  if (auto st = plab_choose_parameters(opt.D, opt.epsilon, opt.eta, &s, &delta_min);
      st != PLAB_OK)
    return fail_with(st);
  double delta_stop = delta_min;
  plab_basis* basis = nullptr;
  if (auto st = plab_basis_build(opt.D, delta_stop, 0.0, opt.m, &basis); st != PLAB_OK)
    return fail_with(st);
  int n = plab_basis_atom_count(basis);

  if (wants(opt, "csv")) {
    std::string csv = "j,k,x_j,delta_j,xi_jk,c_jk\n";
    for (int i = 0; i < n; ++i) {
      int j = 0, k = 0;
      double c = 0, xi = 0, x = 0, delta = 0;
      plab_basis_atom(basis, i, &j, &k, &c, &xi);
      plab_basis_interval_of(basis, j, &x, &delta);
      csv += std::to_string(j) + "," + std::to_string(k) + "," + emit::fmt_double(x) +
             "," + emit::fmt_double(delta) + "," + emit::fmt_double(xi) + "," +
             emit::fmt_double(c) + "\n";
    }
    emit::write_file(fs::path(opt.out_dir) / "basis.csv", csv);
  }
  if (wants(opt, "json")) {
    auto atoms = emit::Json::array();
    for (int i = 0; i < n; ++i) {
      int j = 0, k = 0;
      double c = 0, xi = 0;
      plab_basis_atom(basis, i, &j, &k, &c, &xi);
      auto a = emit::Json::object();
      a.num("j", j).num("k", k).num("xi", xi).num("c", c);
      atoms.push(a);
    }
    auto body = emit::Json::object();
    body.num("delta_stop", delta_stop).num("atom_count", n).child("atoms", atoms);
    auto root = emit::Json::object();
    root.child("config", config_json(opt, "basis"))
        .str("version", plab_version())
        .child("basis", body);
    emit::write_file(fs::path(opt.out_dir) / "basis.json", root.render() + "\n");
  }
  plab_basis_free(basis);
  return 0;
}

int cmd_partition(const Options& opt) {
  double s = 0.0, delta_min = 0.0;
  if (auto st = plab_choose_parameters(opt.D, opt.epsilon, opt.eta, &s, &delta_min);
      st != PLAB_OK)
    return fail_with(st);
  plab_basis* basis = nullptr;
  if (auto st = plab_basis_build(opt.D, delta_min, 0.0, opt.m, &basis); st != PLAB_OK)
    return fail_with(st);
  plab_partition* part = nullptr;
  if (auto st = plab_partition_build(basis, s, delta_min, &part); st != PLAB_OK) {
    plab_basis_free(basis);
    return fail_with(st);
  }
  int n_low = 0, n_med = 0, n_high = 0;
  plab_partition_counts(part, &n_low, &n_med, &n_high);
  double e_low = 0.0, e_high = 0.0;
  if (auto st = plab_partition_energies(part, &e_low, &e_high); st != PLAB_OK) {
    plab_partition_free(part);
    plab_basis_free(basis);
    return fail_with(st);
  }

  if (wants(opt, "csv")) {
    std::string csv = "atom,j,k,xi,class\n";
    const char* names[] = {"low", "med", "high"};
    for (int i = 0; i < plab_basis_atom_count(basis); ++i) {
      int j = 0, k = 0;
      double c = 0, xi = 0;
      plab_basis_atom(basis, i, &j, &k, &c, &xi);
      int cls = plab_partition_class_of(part, i);
      csv += std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(k) +
             "," + emit::fmt_double(xi) + "," + names[cls] + "\n";
    }
    emit::write_file(fs::path(opt.out_dir) / "partition.csv", csv);
  }
  if (wants(opt, "json")) {
    auto body = emit::Json::object();
    body.num("s", s)
        .num("delta_min", delta_min)
        .num("n_low", n_low)
        .num("n_med", n_med)
        .num("n_high", n_high)
        .num("e_low_out", e_low)
        .num("e_high_in", e_high);
    auto root = emit::Json::object();
    root.child("config", config_json(opt, "partition"))
        .str("version", plab_version())
        .child("partition", body);
    emit::write_file(fs::path(opt.out_dir) / "partition.json", root.render() + "\n");
  }
  plab_partition_free(part);
  plab_basis_free(basis);
  return 0;
}

int cmd_verify(const Options& opt) {
  plab_verify* ver = nullptr;
  if (auto st = plab_verify_run(opt.D, opt.epsilon, opt.eta, opt.m, opt.quad_order,
                                opt.grid_rate, opt.seed,
                                opt.inject_fault.empty() ? nullptr
                                                         : opt.inject_fault.c_str(),
                                &ver);
      st != PLAB_OK)
    return fail_with(st);
  int n = plab_verify_count(ver);
  auto checks = emit::Json::array();
  for (int i = 0; i < n; ++i) {
    const char* name = nullptr;
    double measured = 0, bound = 0;
    int pass = 0;
    plab_verify_check(ver, i, &name, &measured, &bound, &pass);
    auto c = emit::Json::object();
    c.str("name", name).num("measured", measured).num("bound", bound).boolean(
        "pass", pass != 0);
    checks.push(c);
    std::fprintf(stderr, "%s %s: measured=%.6g bound=%.6g\n", pass ? "PASS" : "FAIL",
                 name, measured, bound);
  }
  bool ok = plab_verify_all_pass(ver) != 0;
  if (wants(opt, "json")) {
    auto root = emit::Json::object();
    root.child("config", config_json(opt, "verify"))
        .str("version", plab_version())
        .child("checks", checks)
        .boolean("all_pass", ok);
    emit::write_file(fs::path(opt.out_dir) / "report.json", root.render() + "\n");
  }
  plab_verify_free(ver);
  return ok ? 0 : 1;
}

int cmd_report(const Options& opt) {
  plab_theorem* rep = nullptr;
  if (auto st = plab_theorem_run(opt.D, opt.epsilon, opt.eta, opt.m, opt.quad_order,
                                 &rep);
      st != PLAB_OK)
    return fail_with(st);
  int mid_lo = 0, mid_hi = 0;
  double win_lo = 0, win_hi = 0;
  plab_theorem_mid_range(rep, &mid_lo, &mid_hi);
  plab_theorem_window(rep, &win_lo, &win_hi);
  int flags = plab_theorem_pass_flags(rep);

  if (wants(opt, "json")) {
    auto body = emit::Json::object();
    body.num("D", opt.D)
        .num("epsilon", opt.epsilon)
        .num("eta", opt.eta)
        .num("s", plab_theorem_s(rep))
        .num("delta_min", plab_theorem_delta_min(rep))
        .num("m_eps", plab_theorem_m_eps(rep))
        .num("gamma_med", plab_theorem_gamma_med(rep))
        .num("k_bound", plab_theorem_k_bound(rep))
        .num("k_conjectured", plab_theorem_k_conjectured(rep))
        .num("residual", plab_theorem_residual(rep))
        .num("residual_bound", plab_theorem_residual_bound(rep))
        .num("e_low_out", plab_theorem_e_low_out(rep))
        .num("e_high_in", plab_theorem_e_high_in(rep))
        .num("mid_lo", mid_lo)
        .num("mid_hi", mid_hi)
        .num("window_lo", win_lo)
        .num("window_hi", win_hi)
        .num("landau_index", plab_theorem_landau_index(rep))
        .boolean("pass_residual", (flags & 1) != 0)
        .boolean("pass_count", (flags & 2) != 0)
        .boolean("pass_window", (flags & 4) != 0)
        .boolean("all_pass", flags == 7);
    auto root = emit::Json::object();
    root.child("config", config_json(opt, "report"))
        .str("version", plab_version())
        .child("theorem", body);
    emit::write_file(fs::path(opt.out_dir) / "theorem.json", root.render() + "\n");
  }
  if (wants(opt, "svg")) {
    plab_spectrum* spec = nullptr;
    if (plab_spectrum_compute(opt.D, opt.quad_order, &spec) == PLAB_OK) {
      int n = plab_spectrum_count(spec);
      std::vector<double> lambdas(n);
      plab_spectrum_eigenvalues(spec, lambdas.data(), lambdas.size());
      emit::write_file(fs::path(opt.out_dir) / "plunge.svg",
                       emit::plunge_svg(lambdas, win_lo, win_hi, opt.log_y));
      plab_spectrum_free(spec);
    }
  }
  bool ok = flags == 7;
  plab_theorem_free(rep);
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"plunge-lab: eigenvalue plunge of time-frequency localization operators"};
  app.require_subcommand(1);

  Options opt;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--D", opt.D, "Time interval length |I| (>= 2)");
    sub->add_option("--epsilon", opt.epsilon, "Mid-band threshold in (0, 1/2)");
    sub->add_option("--eta", opt.eta, "Smoothness parameter in (0, 1/2]");
    sub->add_option("--m", opt.m, "Cutoff sharpness exponent (>= 1)");
    sub->add_option("--quad-order", opt.quad_order, "Nystrom order (0 = auto)");
    sub->add_option("--grid-rate", opt.grid_rate, "Quadrature nodes per unit length");
    sub->add_option("--seed", opt.seed, "Seed for randomized checks");
    sub->add_option("--out-dir", opt.out_dir, "Output directory");
    sub->add_option("--formats", opt.formats, "Subset of json,csv,svg")
        ->delimiter(',');
    sub->add_flag("--log-y", opt.log_y, "Log-scale value axis in SVG plots");
  };

  auto* spectrum = app.add_subcommand("spectrum", "Eigenvalues of T_{I,J}");
  add_common(spectrum);
  auto* basis = app.add_subcommand("basis", "Local cosine basis atoms");
  add_common(basis);
  auto* partition = app.add_subcommand("partition", "Index classification and energies");
  add_common(partition);
  auto* verify = app.add_subcommand("verify", "Run the named assertion battery");
  add_common(verify);
  verify->add_option("--inject-fault", opt.inject_fault,
                     "Test hook: 'cjk' corrupts one normalization constant");
  auto* report = app.add_subcommand("report", "End-to-end eigenvalue-window report");
  add_common(report);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  try {
    if (spectrum->parsed()) return cmd_spectrum(opt);
    if (basis->parsed()) return cmd_basis(opt);
    if (partition->parsed()) return cmd_partition(opt);
    if (verify->parsed()) return cmd_verify(opt);
    if (report->parsed()) return cmd_report(opt);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "plunge-lab: %s\n", e.what());
    return 3;
  }
  return 2;
}
