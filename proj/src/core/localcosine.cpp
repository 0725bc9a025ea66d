#include "localcosine.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "errors.hpp"
#include "fft.hpp"
#include "parallel.hpp"
#include "quadrature.hpp"

namespace plab {

namespace {
constexpr double kPi = std::numbers::pi;

double sinc(double t) {
  if (t == 0.0) return 1.0;
  double z = kPi * t;
  return std::sin(z) / z;
}

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}
}  // namespace

std::vector<TransitionWidths> select_transition_widths(const WhitneyDecomposition& decomp) {
  const auto& ivs = decomp.intervals;
  std::vector<TransitionWidths> w(ivs.size());
  for (std::size_t i = 0; i < ivs.size(); ++i) {
    double d = ivs[i].delta;
    // left endpoint
    if (i > 0 && ivs[i - 1].right() == ivs[i].x) {
      double dn = ivs[i - 1].delta;
      double ratio = std::max(d, dn) / std::min(d, dn);
      if (ratio > 4.0)
        throw IncompatibleScales("select_transition_widths: adjacent ratio > 4");
      w[i].left = std::min(d, dn) / 20.0;
    } else {
      w[i].left = d / 20.0;
    }
    // right endpoint
    if (i + 1 < ivs.size() && ivs[i].right() == ivs[i + 1].x) {
      double dn = ivs[i + 1].delta;
      double ratio = std::max(d, dn) / std::min(d, dn);
      if (ratio > 4.0)
        throw IncompatibleScales("select_transition_widths: adjacent ratio > 4");
      w[i].right = std::min(d, dn) / 20.0;
    } else {
      w[i].right = d / 20.0;
    }
  }
  return w;
}

double checked_panel_integral(const std::function<double(double)>& integrand, double lo,
                              double hi, const std::vector<double>& breakpoints,
                              double max_len, int nodes_per_panel) {
  auto coarse = make_panels(lo, hi, breakpoints, max_len);
  auto fine = make_panels(lo, hi, breakpoints, max_len / 2);
  double v1 = integrate_composite(integrand, coarse, nodes_per_panel);
  double v2 = integrate_composite(integrand, fine, nodes_per_panel);
  if (std::abs(v1 - v2) > 1e-10 * std::max(1.0, std::abs(v2)))
    throw QuadratureFailure("panel quadrature did not converge");
  return v2;
}

double normalization_from_integral(double delta, double integral) {
  if (!(integral > 0)) throw QuadratureFailure("normalization integral not positive");
  return std::sqrt(delta / integral);
}

Basis::Basis(WhitneyDecomposition decomp, CutoffSpec cutoff, double xi_max)
    : decomp_(std::move(decomp)), cutoff_(std::move(cutoff)), xi_max_(xi_max) {
  if (!(xi_max_ > 0)) throw InvalidParameter("Basis: xi_max must be > 0");
  widths_ = select_transition_widths(decomp_);

  const auto& ivs = decomp_.intervals;
  k_offset_.resize(ivs.size() + 1, 0);
  for (std::size_t i = 0; i < ivs.size(); ++i) {
    int kc = std::max(1, static_cast<int>(std::ceil(2.0 * ivs[i].delta * xi_max_)));
    k_offset_[i + 1] = k_offset_[i] + kc;
  }
  atoms_.resize(k_offset_.back());

  // windows must stay inside I (guaranteed by W2 plus the width rule)
  double h = decomp_.half_width();
  for (std::size_t i = 0; i < ivs.size(); ++i) {
    if (support_lo(static_cast<int>(i)) < -h || support_hi(static_cast<int>(i)) > h)
      throw AssertionFailure("Basis: window support escapes I");
  }

  parallel_for(ivs.size(), [&](std::size_t i) {
    const auto& iv = ivs[i];
    int j = static_cast<int>(i);
    double lo = support_lo(j), hi = support_hi(j);
    std::vector<double> bks = {iv.x + widths_[i].left, iv.right() - widths_[i].right};
    for (int k = 0; k + k_offset_[i] < k_offset_[i + 1]; ++k) {
      double xi_c = (2.0 * k + 1.0) / (4.0 * iv.delta);
      double freq = 2.0 * xi_c;  // cos^2 oscillates at twice the center
      double max_len =
          std::min({2.0 / std::max(freq, 1e-12), (hi - lo) / 4.0,
                    std::min(widths_[i].left, widths_[i].right)});
      auto integrand = [&](double x) {
        double w = window(j, x);
        double c = std::cos(2.0 * kPi * xi_c * (x - iv.x));
        return w * w * c * c;
      };
      double integral = checked_panel_integral(integrand, lo, hi, bks, max_len);
      auto& atom = atoms_[k_offset_[i] + k];
      atom.j = j;
      atom.k = k;
      atom.xi = xi_c;
      atom.c_norm = normalization_from_integral(iv.delta, integral);
    }
  });

  osc_.resize(atoms_.size());
  parallel_for(atoms_.size(), [&](std::size_t idx) { build_osc_rep(static_cast<int>(idx)); });
}

int Basis::k_count(int j) const { return k_offset_[j + 1] - k_offset_[j]; }

double Basis::support_lo(int j) const {
  return decomp_.intervals[j].x - widths_[j].left;
}

double Basis::support_hi(int j) const {
  return decomp_.intervals[j].right() + widths_[j].right;
}

double Basis::window(int j, double x) const {
  const auto& iv = decomp_.intervals[j];
  double l = cutoff_.eval_theta((x - iv.x) / widths_[j].left);
  if (l == 0.0) return 0.0;
  double r = cutoff_.eval_theta((iv.right() - x) / widths_[j].right);
  return l * r;
}

double Basis::atom_value(int idx, double x) const {
  const auto& atom = atoms_[idx];
  const auto& iv = decomp_.intervals[atom.j];
  if (x <= support_lo(atom.j) || x >= support_hi(atom.j)) return 0.0;
  double w = window(atom.j, x);
  return atom.c_norm / std::sqrt(iv.delta) * w *
         std::cos(2.0 * kPi * atom.xi * (x - iv.x));
}

SampledFunction Basis::sample_atom(int idx, double x0, double dx, std::size_t n) const {
  SampledFunction f;
  f.x0 = x0;
  f.dx = dx;
  f.values.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    f.values[i] = atom_value(idx, x0 + static_cast<double>(i) * dx);
  return f;
}

void Basis::build_osc_rep(int idx) {
  const auto& atom = atoms_[idx];
  const auto& iv = decomp_.intervals[atom.j];
  double lo = support_lo(atom.j), hi = support_hi(atom.j);
  double f = atom.xi + 2.0;  // valid for evaluating the transform on |xi| <= 2
  double max_len = std::min({2.0 / f, (hi - lo) / 4.0,
                             std::min(widths_[atom.j].left, widths_[atom.j].right)});
  std::vector<double> bks = {iv.x + widths_[atom.j].left, iv.right() - widths_[atom.j].right};
  auto panels = make_panels(lo, hi, bks, max_len);
  const int npp = 16;
  auto& rep = osc_[idx];
  rep.nodes.clear();
  rep.weighted_values.clear();
  std::vector<double> xs, ws;
  for (std::size_t p = 0; p + 1 < panels.size(); ++p) {
    gauss_legendre_on(npp, panels[p], panels[p + 1], xs, ws);
    for (int q = 0; q < npp; ++q) {
      rep.nodes.push_back(xs[q]);
      rep.weighted_values.push_back(ws[q] * atom_value(idx, xs[q]));
    }
  }
}

std::complex<double> Basis::atom_fourier(int idx, double xi) const {
  const auto& atom = atoms_[idx];
  if (std::abs(xi) <= 2.0) {
    // cached oscillation-aware representation
    const auto& rep = osc_[idx];
    std::complex<double> s = 0.0;
    for (std::size_t q = 0; q < rep.nodes.size(); ++q) {
      double ph = -2.0 * kPi * xi * rep.nodes[q];
      s += rep.weighted_values[q] * std::complex<double>(std::cos(ph), std::sin(ph));
    }
    return s;
  }
  // one-off evaluation away from J: rebuild panels for the combined frequency
  const auto& iv = decomp_.intervals[atom.j];
  double lo = support_lo(atom.j), hi = support_hi(atom.j);
  double f = atom.xi + std::abs(xi);
  double max_len = std::min({2.0 / f, (hi - lo) / 4.0,
                             std::min(widths_[atom.j].left, widths_[atom.j].right)});
  std::vector<double> bks = {iv.x + widths_[atom.j].left, iv.right() - widths_[atom.j].right};
  auto panels = make_panels(lo, hi, bks, max_len);
  std::vector<double> xs, ws;
  std::complex<double> s = 0.0;
  for (std::size_t p = 0; p + 1 < panels.size(); ++p) {
    gauss_legendre_on(16, panels[p], panels[p + 1], xs, ws);
    for (int q = 0; q < 16; ++q) {
      double ph = -2.0 * kPi * xi * xs[q];
      s += ws[q] * atom_value(idx, xs[q]) * std::complex<double>(std::cos(ph), std::sin(ph));
    }
  }
  return s;
}

SampledFunction Basis::atom_spectrum(int idx, int grid_pts, int pad) const {
  if (grid_pts < 2 || (grid_pts & (grid_pts - 1)) != 0)
    throw InvalidParameter("atom_spectrum: grid_pts must be a power of two");
  if (pad < 4) throw InvalidParameter("atom_spectrum: pad must be >= 4");
  const auto& atom = atoms_[idx];
  double lo = support_lo(atom.j), hi = support_hi(atom.j);
  double span = pad * ((hi - lo) + 2.0);
  double dx = span / grid_pts;
  double w_min = std::min(widths_[atom.j].left, widths_[atom.j].right);
  if (dx > w_min / 6.0)
    throw GridTooCoarse("atom_spectrum: sample spacing cannot resolve transitions");
  if (1.0 / (2.0 * dx) < atom.xi + 2.0)
    throw GridTooCoarse("atom_spectrum: Nyquist below the atom frequency");

  double center = 0.5 * (lo + hi);
  double x0 = center - span / 2;
  std::vector<std::complex<double>> buf(grid_pts);
  for (int i = 0; i < grid_pts; ++i)
    buf[i] = atom_value(idx, x0 + i * dx);
  fft_inplace(buf, false);

  // continuous-transform approximation with an ascending frequency axis
  SampledFunction out;
  out.dx = 1.0 / span;
  out.x0 = -out.dx * (grid_pts / 2);
  out.values.resize(grid_pts);
  for (int i = 0; i < grid_pts; ++i) {
    int k = i - grid_pts / 2;  // signed bin
    int src = (k + grid_pts) % grid_pts;
    double xi = k * out.dx;
    double ph = -2.0 * kPi * xi * x0;
    out.values[i] = buf[src] * dx * std::complex<double>(std::cos(ph), std::sin(ph));
  }
  return out;
}

double band_energy(const SampledFunction& freq, double lo, double hi) {
  if (freq.size() < 8) throw InvalidParameter("band_energy: spectrum too short");
  auto g = [&](std::size_t i) { return std::norm(freq.values[i]); };
  auto interp = [&](double x) {
    // cubic interpolation of |F|^2 at an off-grid point
    double t = (x - freq.x0) / freq.dx;
    long i1 = static_cast<long>(std::floor(t));
    i1 = std::clamp<long>(i1, 1, static_cast<long>(freq.size()) - 3);
    double u = t - i1;
    double y0 = g(i1 - 1), y1 = g(i1), y2 = g(i1 + 1), y3 = g(i1 + 2);
    return y1 + 0.5 * u * (y2 - y0 + u * (2 * y0 - 5 * y1 + 4 * y2 - y3 +
                                          u * (3 * (y1 - y2) + y3 - y0)));
  };
  long ia = static_cast<long>(std::ceil((lo - freq.x0) / freq.dx));
  long ib = static_cast<long>(std::floor((hi - freq.x0) / freq.dx));
  ia = std::clamp<long>(ia, 1, static_cast<long>(freq.size()) - 2);
  ib = std::clamp<long>(ib, ia, static_cast<long>(freq.size()) - 2);
  // composite Simpson over full cells, trapezoid-of-cubic in the partial cells
  double total = 0.0;
  long n_cells = ib - ia;
  // make the cell count even for Simpson; absorb one trapezoid cell if odd
  if (n_cells >= 2 && n_cells % 2 == 1) {
    total += 0.5 * freq.dx * (g(ib - 1) + g(ib));
    ib -= 1;
    n_cells -= 1;
  }
  for (long i = ia; i + 2 <= ib; i += 2)
    total += freq.dx / 3.0 * (g(i) + 4.0 * g(i + 1) + g(i + 2));
  // partial end cells, 5-point local integration of the cubic interpolant
  auto partial = [&](double a, double b) {
    if (b <= a) return 0.0;
    double s = 0.0;
    const auto& rule = gauss_legendre(5);
    double mid = 0.5 * (a + b), halfw = 0.5 * (b - a);
    for (int q = 0; q < 5; ++q) s += rule.weights[q] * interp(mid + halfw * rule.nodes[q]);
    return halfw * s;
  };
  total += partial(lo, freq.coord(ia));
  total += partial(freq.coord(ib), hi);
  return total;
}

double Basis::in_band_energy(int idx) const {
  const auto& atom = atoms_[idx];
  const auto& iv = decomp_.intervals[atom.j];
  if (iv.delta <= 1.0 / 16.0) {
    // Narrow support: the spectrum is smooth on scale 1/delta >> 1, so direct
    // panel quadrature over J converges with a handful of panels.
    auto f = [&](double xi) { return std::norm(atom_fourier(idx, xi)); };
    double prev = 0.0;
    for (int panels = 4;; panels *= 2) {
      std::vector<double> edges;
      for (int p = 0; p <= panels; ++p) edges.push_back(-0.5 + 1.0 * p / panels);
      double val = integrate_composite(f, edges, 16);
      if (panels > 4 && std::abs(val - prev) <= 1e-11 * std::max(1.0, std::abs(val)))
        return val;
      if (panels > 256) throw QuadratureFailure("in_band_energy did not converge");
      prev = val;
    }
  }
  double lo = support_lo(atom.j), hi = support_hi(atom.j);
  double support = hi - lo;
  double w_min = std::min(widths_[atom.j].left, widths_[atom.j].right);
  double span = 32.0 * (support + 2.0);
  double dx_needed = std::min(w_min / 6.0, 1.0 / (2.0 * (atom.xi + 4.0)));
  std::size_t n = next_pow2(static_cast<std::size_t>(std::ceil(span / dx_needed)));
  if (n > (std::size_t{1} << 21))
    throw GridTooCoarse("in_band_energy: grid would be too large");
  auto spec = atom_spectrum(idx, static_cast<int>(n), 32);
  return band_energy(spec, -0.5, 0.5);
}

double Basis::tphi_norm_sq(int idx) const {
  double D = decomp_.D;
  // frequency nodes on J resolving both the spectrum and the sinc kernel
  double max_len = std::min({4.0 / D, 0.125});
  auto panels = make_panels(-0.5, 0.5, {}, max_len);
  std::vector<double> xs, ws, all_x, all_w;
  for (std::size_t p = 0; p + 1 < panels.size(); ++p) {
    gauss_legendre_on(16, panels[p], panels[p + 1], xs, ws);
    all_x.insert(all_x.end(), xs.begin(), xs.end());
    all_w.insert(all_w.end(), ws.begin(), ws.end());
  }
  std::size_t nq = all_x.size();
  std::vector<std::complex<double>> fv(nq);
  for (std::size_t q = 0; q < nq; ++q) fv[q] = atom_fourier(idx, all_x[q]);
  double total = 0.0;
  for (std::size_t q = 0; q < nq; ++q) {
    // diagonal plus twice the real part of the strict upper triangle
    total += all_w[q] * all_w[q] * std::norm(fv[q]) * D;
    for (std::size_t r = q + 1; r < nq; ++r) {
      double kern = D * sinc(D * (all_x[q] - all_x[r]));
      total += 2.0 * all_w[q] * all_w[r] * kern * (fv[q] * std::conj(fv[r])).real();
    }
  }
  return total;
}

double Basis::pair_inner(int a, int b, double grid_rate) const {
  const auto& A = atoms_[a];
  const auto& B = atoms_[b];
  double lo = std::max(support_lo(A.j), support_lo(B.j));
  double hi = std::min(support_hi(A.j), support_hi(B.j));
  if (hi <= lo) return 0.0;
  double f = A.xi + B.xi;
  double w_min = std::min({widths_[A.j].left, widths_[A.j].right, widths_[B.j].left,
                           widths_[B.j].right});
  double max_len = std::min({2.0 / std::max(f, 1e-12), 16.0 / grid_rate, w_min,
                             (hi - lo)});
  std::vector<double> bks = {
      decomp_.intervals[A.j].x + widths_[A.j].left,
      decomp_.intervals[A.j].right() - widths_[A.j].right,
      decomp_.intervals[B.j].x + widths_[B.j].left,
      decomp_.intervals[B.j].right() - widths_[B.j].right,
      support_lo(A.j), support_hi(A.j), support_lo(B.j), support_hi(B.j)};
  auto panels = make_panels(lo, hi, bks, max_len);
  auto integrand = [&](double x) { return atom_value(a, x) * atom_value(b, x); };
  return integrate_composite(integrand, panels, 16);
}

Eigen::MatrixXd Basis::gram_matrix(const std::vector<int>& indices, double grid_rate) const {
  std::vector<int> idx = indices;
  if (idx.empty()) {
    idx.resize(atoms_.size());
    for (std::size_t i = 0; i < atoms_.size(); ++i) idx[i] = static_cast<int>(i);
  }
  double xi_hi = 0.0;
  for (int i : idx) xi_hi = std::max(xi_hi, atoms_[i].xi);
  if (grid_rate < 8.0 * xi_hi)
    throw GridTooCoarse("gram_matrix: need >= 8 nodes per oscillation");

  const std::size_t n = idx.size();
  Eigen::MatrixXd G(n, n);
  std::vector<std::pair<int, int>> pairs;
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = r; c < n; ++c) pairs.emplace_back(static_cast<int>(r),
                                                           static_cast<int>(c));
  std::vector<double> vals(pairs.size());
  parallel_for(pairs.size(), [&](std::size_t p) {
    vals[p] = pair_inner(idx[pairs[p].first], idx[pairs[p].second], grid_rate);
  });
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    G(pairs[p].first, pairs[p].second) = vals[p];
    G(pairs[p].second, pairs[p].first) = vals[p];
  }
  return G;
}

GramStats Basis::gram_stats(const Eigen::MatrixXd& gram) {
  GramStats s;
  for (Eigen::Index r = 0; r < gram.rows(); ++r) {
    for (Eigen::Index c = 0; c < gram.cols(); ++c) {
      if (r == c)
        s.max_diag_dev = std::max(s.max_diag_dev, std::abs(gram(r, c) - 1.0));
      else
        s.max_offdiag = std::max(s.max_offdiag, std::abs(gram(r, c)));
    }
  }
  return s;
}

void Basis::corrupt_normalization(int idx, double factor) {
  atoms_[idx].c_norm *= factor;
  build_osc_rep(idx);
}

}  // namespace plab
