#pragma once

#include <complex>
#include <numbers>
#include <vector>

namespace chainstat {

/// Iterative radix-2 FFT, in place. n must be a power of two.
inline void fft_inplace(std::vector<std::complex<double>>& a, bool inverse) {
    const std::size_t n = a.size();
    if (n < 2) return;
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = (inverse ? 2.0 : -2.0) * std::numbers::pi / static_cast<double>(len);
        const std::complex<double> wl(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w = 1.0;
            for (std::size_t k = 0; k < len / 2; ++k) {
                const auto u = a[i + k];
                const auto v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wl;
            }
        }
    }
    if (inverse)
        for (auto& x : a) x /= static_cast<double>(n);
}

inline std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

/// Multi-dimensional inverse FFT over a row-major grid with the given shape.
inline void ifft_grid(std::vector<std::complex<double>>& grid,
                      const std::vector<std::size_t>& shape) {
    std::size_t total = 1;
    for (auto s : shape) total *= s;
    std::size_t stride = 1;
    for (std::size_t axis = shape.size(); axis-- > 0;) {
        const std::size_t n = shape[axis];
        std::vector<std::complex<double>> line(n);
        const std::size_t blocks = total / n;
        for (std::size_t b = 0; b < blocks; ++b) {
            // base offset of the b-th line along this axis
            const std::size_t inner = b % stride;
            const std::size_t outer = b / stride;
            const std::size_t base = outer * stride * n + inner;
            for (std::size_t k = 0; k < n; ++k) line[k] = grid[base + k * stride];
            fft_inplace(line, true);
            for (std::size_t k = 0; k < n; ++k) grid[base + k * stride] = line[k];
        }
        stride *= n;
    }
}

}  // namespace chainstat
