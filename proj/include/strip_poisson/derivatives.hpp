#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "strip_poisson/fft.hpp"
#include "strip_poisson/grid.hpp"
#include "strip_poisson/parallel.hpp"

namespace strip {

enum class Direction { y1, y2 };

namespace detail {

/// 4th-order finite differences on a uniform 1D array, one-sided stencils
/// on the two boundary layers. Exact through degree-4 polynomials (order 1)
/// and degree-5 (order 2).
inline void fd_derivative(const double* f, double* out, int n, double h, int order) {
  if (order == 1) {
    const double c = 1.0 / (12.0 * h);
    out[0] = c * (-25 * f[0] + 48 * f[1] - 36 * f[2] + 16 * f[3] - 3 * f[4]);
    out[1] = c * (-3 * f[0] - 10 * f[1] + 18 * f[2] - 6 * f[3] + f[4]);
    for (int j = 2; j < n - 2; ++j)
      out[j] = c * (f[j - 2] - 8 * f[j - 1] + 8 * f[j + 1] - f[j + 2]);
    out[n - 2] = -c * (-3 * f[n - 1] - 10 * f[n - 2] + 18 * f[n - 3] - 6 * f[n - 4] + f[n - 5]);
    out[n - 1] = -c * (-25 * f[n - 1] + 48 * f[n - 2] - 36 * f[n - 3] + 16 * f[n - 4] - 3 * f[n - 5]);
  } else {
    const double c = 1.0 / (12.0 * h * h);
    out[0] = c * (45 * f[0] - 154 * f[1] + 214 * f[2] - 156 * f[3] + 61 * f[4] - 10 * f[5]);
    out[1] = c * (10 * f[0] - 15 * f[1] - 4 * f[2] + 14 * f[3] - 6 * f[4] + f[5]);
    for (int j = 2; j < n - 2; ++j)
      out[j] = c * (-f[j - 2] + 16 * f[j - 1] - 30 * f[j] + 16 * f[j + 1] - f[j + 2]);
    out[n - 2] = c * (10 * f[n - 1] - 15 * f[n - 2] - 4 * f[n - 3] + 14 * f[n - 4] - 6 * f[n - 5] +
                      f[n - 6]);
    out[n - 1] = c * (45 * f[n - 1] - 154 * f[n - 2] + 214 * f[n - 3] - 156 * f[n - 4] +
                      61 * f[n - 5] - 10 * f[n - 6]);
  }
}

inline DecayClass derived_decay(const DecayClass& d, Direction dir, int order) {
  if (d.is_schwartz()) return d;
  if (dir == Direction::y1) return d;  // horizontal derivative keeps the tail
  if (d.kind == DecayKind::poly_plus_linear)
    return order == 1 ? DecayClass::poly(0.0) : DecayClass::poly(-2.0);
  return DecayClass::poly(d.alpha - order);
}

}  // namespace detail

/// Partial derivative of a sampled field. Horizontal derivatives are
/// spectral (multiplication by i*2*pi*k per mode, Nyquist zeroed for odd
/// orders); vertical derivatives use the 4th-order stencils above.
inline StripField differentiate(const StripField& f, Direction dir, int order) {
  if (order != 1 && order != 2) throw std::invalid_argument("differentiate: order must be 1 or 2");
  const StripGrid& g = f.grid;
  StripField out(g, detail::derived_decay(f.decay, dir, order));

  if (dir == Direction::y2) {
    parallel_for(0, g.n1, [&](int i) {
      detail::fd_derivative(&f.v[static_cast<size_t>(i) * g.n2],
                            &out.v[static_cast<size_t>(i) * g.n2], g.n2, g.h2, order);
    });
    return out;
  }

  const double two_pi = 2.0 * std::numbers::pi;
  parallel_for(0, g.n2, [&](int j) {
    std::vector<std::complex<double>> row(static_cast<size_t>(g.n1));
    for (int i = 0; i < g.n1; ++i) row[static_cast<size_t>(i)] = f.at(i, j);
    fft_inplace(row, false);
    for (int r = 0; r < g.n1; ++r) {
      int k = r <= g.n1 / 2 ? r : r - g.n1;
      if (r == g.n1 / 2) {
        if (order == 1) {
          row[static_cast<size_t>(r)] = 0.0;  // odd derivative of the Nyquist mode
          continue;
        }
        k = -g.n1 / 2;
      }
      const std::complex<double> ik(0.0, two_pi * k);
      row[static_cast<size_t>(r)] *= order == 1 ? ik : ik * ik;
    }
    fft_inplace(row, true);
    for (int i = 0; i < g.n1; ++i) out.at(i, j) = row[static_cast<size_t>(i)].real() / g.n1;
  });
  return out;
}

/// Discrete Laplacian assembled from the two second derivatives.
inline StripField laplacian(const StripField& f) {
  StripField d11 = differentiate(f, Direction::y1, 2);
  const StripField d22 = differentiate(f, Direction::y2, 2);
  d11 += d22;
  return d11;
}

}  // namespace strip
