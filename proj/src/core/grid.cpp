#include "grid.hpp"

#include "errors.hpp"

namespace plab {

double SampledFunction::norm_sq() const {
  double s = 0.0;
  for (const auto& z : values) s += std::norm(z);
  return s * dx;
}

std::complex<double> SampledFunction::inner(const SampledFunction& other) const {
  if (other.size() != size()) throw InvalidParameter("inner: size mismatch");
  std::complex<double> s = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i)
    s += values[i] * std::conj(other.values[i]);
  return s * dx;
}

SampledFunction make_grid(std::size_t n, double dx) {
  SampledFunction f;
  f.dx = dx;
  f.x0 = -0.5 * static_cast<double>(n) * dx;
  f.values.assign(n, 0.0);
  return f;
}

}  // namespace plab
