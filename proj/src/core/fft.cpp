#include "fft.hpp"

#include <fftw3.h>

#include <mutex>

#include "errors.hpp"

namespace plab {

namespace {
// FFTW planning is not thread-safe; execution of a plan on its own buffer is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

void fft_inplace(std::vector<std::complex<double>>& data, bool inverse) {
  if (data.empty()) return;
  const int n = static_cast<int>(data.size());
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    plan = fftw_plan_dft_1d(n, buf, buf, inverse ? FFTW_BACKWARD : FFTW_FORWARD,
                            FFTW_ESTIMATE);
  }
  if (!plan) throw Error("fftw plan creation failed");
  fftw_execute_dft(plan, buf, buf);
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
  if (inverse) {
    double scale = 1.0 / n;
    for (auto& z : data) z *= scale;
  }
}

std::vector<std::complex<double>> fft_real(const std::vector<double>& samples) {
  std::vector<std::complex<double>> z(samples.begin(), samples.end());
  fft_inplace(z, false);
  return z;
}

}  // namespace plab
