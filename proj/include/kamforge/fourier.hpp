#ifndef KAMFORGE_FOURIER_HPP
#define KAMFORGE_FOURIER_HPP

#include <complex>
#include <span>
#include <vector>

namespace kamforge {

/// In-place radix-2 FFT; size must be a power of two. sign=-1 forward.
void fft_pow2(std::vector<std::complex<double>>& a, int sign);

/// Forward discrete Fourier transform of real samples:
/// X[j] = (1/n) * sum_m v[m] * exp(-2*pi*i*j*m/n), j = 0..n/2.
/// Uses the FFT for power-of-two n, a stable direct sum otherwise.
std::vector<std::complex<double>> real_dft_half(std::span<const double> values);

bool is_pow2(std::size_t n);

} // namespace kamforge

#endif
