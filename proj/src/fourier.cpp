#include "kamforge/fourier.hpp"

#include "kamforge/common.hpp"

#include <cmath>

namespace kamforge {

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

void fft_pow2(std::vector<std::complex<double>>& a, int sign) {
    const std::size_t n = a.size();
    if (n < 2) return;
    // bit reversal
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = sign * two_pi / static_cast<double>(len);
        const std::complex<double> wl(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (std::size_t j = 0; j < len / 2; ++j) {
                std::complex<double> u = a[i + j];
                std::complex<double> v = a[i + j + len / 2] * w;
                a[i + j] = u + v;
                a[i + j + len / 2] = u - v;
                w *= wl;
            }
        }
    }
}

std::vector<std::complex<double>> real_dft_half(std::span<const double> values) {
    const std::size_t n = values.size();
    std::vector<std::complex<double>> out(n / 2 + 1);
    if (n == 0) return out;
    if (is_pow2(n) && n >= 8) {
        std::vector<std::complex<double>> a(n);
        for (std::size_t m = 0; m < n; ++m) a[m] = values[m];
        fft_pow2(a, -1);
        for (std::size_t j = 0; j <= n / 2; ++j) out[j] = a[j] / static_cast<double>(n);
        return out;
    }
    // direct sum with periodically resynced twiddle recurrence
    for (std::size_t j = 0; j <= n / 2; ++j) {
        const double step = -two_pi * static_cast<double>(j) / static_cast<double>(n);
        double cr = 1.0, ci = 0.0;
        double sr = 0.0, si = 0.0;
        const double cs = std::cos(step), sn = std::sin(step);
        for (std::size_t m = 0; m < n; ++m) {
            if ((m & 255u) == 0u && m != 0u) {
                // resync to cap rounding drift; reduce j*m mod n exactly
                const unsigned long long r = (static_cast<unsigned long long>(j) * m) % n;
                const double phase = -two_pi * static_cast<double>(r) / static_cast<double>(n);
                cr = std::cos(phase);
                ci = std::sin(phase);
            }
            sr += values[m] * cr;
            si += values[m] * ci;
            const double nr = cr * cs - ci * sn;
            ci = cr * sn + ci * cs;
            cr = nr;
        }
        out[j] = std::complex<double>(sr, si) / static_cast<double>(n);
    }
    return out;
}

} // namespace kamforge
