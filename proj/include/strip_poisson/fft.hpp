#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace strip {

inline constexpr bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

/// In-place radix-2 Cooley-Tukey transform, no normalization either way.
/// Forward uses e^{-i 2pi jk/n}; inverse uses the conjugate twiddles.
inline void fft_inplace(std::vector<std::complex<double>>& a, bool inverse) {
  const int n = static_cast<int>(a.size());
  if (!is_power_of_two(n)) throw std::invalid_argument("fft: size must be a power of two");
  for (int i = 1, j = 0; i < n; ++i) {
    int bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (int len = 2; len <= n; len <<= 1) {
    const double ang = (inverse ? 2.0 : -2.0) * std::numbers::pi / len;
    for (int i = 0; i < n; i += len) {
      for (int j = 0; j < len / 2; ++j) {
        const std::complex<double> w(std::cos(ang * j), std::sin(ang * j));
        const std::complex<double> u = a[i + j];
        const std::complex<double> v = a[i + j + len / 2] * w;
        a[i + j] = u + v;
        a[i + j + len / 2] = u - v;
      }
    }
  }
}

}  // namespace strip
