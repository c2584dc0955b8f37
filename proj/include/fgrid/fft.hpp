#pragma once

#include <cstddef>
#include <vector>

#include "fgrid/common.hpp"

namespace fgrid {
namespace detail {

inline bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

inline void fft_pow2(std::vector<cd>& a, int sign) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = double(sign) * kTwoPi / double(len);
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t k = 0; k < len / 2; ++k) {
        const cd w = std::polar(1.0, ang * double(k));
        const cd u = a[i + k];
        const cd t = w * a[i + k + len / 2];
        a[i + k] = u + t;
        a[i + k + len / 2] = u - t;
      }
    }
  }
}

// Chirp-z transform for arbitrary length, built on power-of-two FFTs.
inline void fft_bluestein(std::vector<cd>& a, int sign) {
  const std::size_t n = a.size();
  std::size_t m = 1;
  while (m < 2 * n - 1) m <<= 1;

  std::vector<cd> chirp(n);
  for (std::size_t j = 0; j < n; ++j) {
    // j^2 mod 2n keeps the polar argument small for large j
    const std::uint64_t q = (std::uint64_t(j) * j) % (2 * n);
    chirp[j] = std::polar(1.0, double(sign) * kPi * double(q) / double(n));
  }

  std::vector<cd> x(m, cd(0.0)), y(m, cd(0.0));
  for (std::size_t j = 0; j < n; ++j) x[j] = a[j] * chirp[j];
  y[0] = std::conj(chirp[0]);
  for (std::size_t j = 1; j < n; ++j) y[j] = y[m - j] = std::conj(chirp[j]);

  fft_pow2(x, -1);
  fft_pow2(y, -1);
  for (std::size_t j = 0; j < m; ++j) x[j] *= y[j];
  fft_pow2(x, +1);

  for (std::size_t k = 0; k < n; ++k) a[k] = chirp[k] * x[k] / double(m);
}

} // namespace detail

// In-place unnormalized DFT of any length:
//   sign = -1:  A_k = sum_j a_j e^{-2 pi i jk/N}
//   sign = +1:  A_k = sum_j a_j e^{+2 pi i jk/N}
inline void fft(std::vector<cd>& a, int sign) {
  if (a.size() < 2) return;
  if (detail::is_pow2(a.size()))
    detail::fft_pow2(a, sign);
  else
    detail::fft_bluestein(a, sign);
}

} // namespace fgrid
