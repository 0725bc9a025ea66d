#pragma once

#include <complex>
#include <vector>

namespace plab {

/// In-place complex DFT (FFTW backend). `inverse` applies the 1/N-normalized
/// inverse transform, so fft followed by inverse fft is the identity.
void fft_inplace(std::vector<std::complex<double>>& data, bool inverse);

/// Forward DFT of real samples; returns the full complex spectrum.
std::vector<std::complex<double>> fft_real(const std::vector<double>& samples);

}  // namespace plab
