#pragma once

#include <cmath>
#include <numbers>
#include <utility>

#include "strip_poisson/errors.hpp"

namespace strip {

// Fundamental solution of -Laplace on the periodic strip (0,1) x R:
//
//   G(y) = -(1/4pi) ln( 2 (cosh(2 pi y2) - cos(2 pi y1)) )
//        = G1(y) - |y2|/2,
//
// where G1 collects the nonzero horizontal modes and decays like
// e^{-2 pi |y2|}, and the mean-mode part G2 = -|y2|/2 grows linearly.
// Per nonzero mode k the vertical convolution kernel is
//
//   F_k(G)(t) = e^{-2 pi |k| |t|} / (4 pi |k|).
//
// Singularities sit on the lattice {(j, 0), j integer}. Far-field
// evaluation (|y2| > 20) switches to an overflow-safe rewriting in terms
// of e^{-2 pi |y2|}.

inline constexpr double kGreenFarFieldSwitch = 20.0;

/// y1 reduced to [-1/2, 1/2) by periodicity.
inline double wrap_periodic(double y1) { return y1 - std::floor(y1 + 0.5); }

/// Distance to the nearest singular lattice point (j, 0).
inline double singular_distance(double y1, double y2) {
  const double w = wrap_periodic(y1);
  return std::hypot(w, y2);
}

struct GreenEval {
  double value = 0.0;
  double dist_to_singularity = 0.0;
};

namespace detail {
/// ln(1 + e^{-4 pi a} - 2 e^{-2 pi a} cos(2 pi y1)) for a = |y2|, the
/// relative correction of the far field around -|y2|/2. Accurate for any
/// a > 0 (log1p keeps the cancellation harmless).
inline double far_log_correction(double y1, double a) {
  const double q = std::exp(-2.0 * std::numbers::pi * a);
  return std::log1p(q * q - 2.0 * q * std::cos(2.0 * std::numbers::pi * y1));
}
}  // namespace detail

inline GreenEval green_closed(double y1, double y2) {
  const double pi = std::numbers::pi;
  const double dist = singular_distance(y1, y2);
  if (dist <= 0.0) throw singularity_error("green_closed: evaluation at a lattice singularity");
  double val;
  const double a = std::abs(y2);
  if (a > kGreenFarFieldSwitch) {
    val = -0.5 * a - detail::far_log_correction(y1, a) / (4.0 * pi);
  } else {
    val = -std::log(2.0 * (std::cosh(2.0 * pi * y2) - std::cos(2.0 * pi * y1))) / (4.0 * pi);
  }
  return {val, dist};
}

/// Exponentially localized part G1 = G + |y2|/2, computed without the
/// far-field cancellation, so its relative accuracy is uniform in y2.
inline double green_localized(double y1, double y2) {
  const double a = std::abs(y2);
  if (a > 0.05) return -detail::far_log_correction(y1, a) / (4.0 * std::numbers::pi);
  return green_closed(y1, y2).value + 0.5 * a;
}

/// Partial sum of the mode expansion up to |k| <= K plus the mean-mode
/// part -|y2|/2. Converges pointwise for y2 != 0; the truncation error is
/// below e^{-2 pi K |y2|} / (2 pi K (1 - e^{-2 pi |y2|})).
inline double green_series(double y1, double y2, int K) {
  if (y2 == 0.0) throw singularity_error("green_series: series requires y2 != 0");
  if (K < 1) throw std::invalid_argument("green_series: K must be >= 1");
  const double pi = std::numbers::pi;
  const double a = std::abs(y2);
  double s = -0.5 * a;
  for (int k = 1; k <= K; ++k) {
    s += std::exp(-2.0 * pi * k * a) * std::cos(2.0 * pi * k * y1) / (2.0 * pi * k);
  }
  return s;
}

inline double green_series_truncation_bound(double y2, int K) {
  const double pi = std::numbers::pi;
  const double a = std::abs(y2);
  return std::exp(-2.0 * pi * K * a) / (2.0 * pi * K * (1.0 - std::exp(-2.0 * pi * a)));
}

/// Analytic gradient of the closed form:
///   d1 G = -(1/2) sin(2 pi y1) / (cosh(2 pi y2) - cos(2 pi y1))
///   d2 G = -(1/2) sinh(2 pi y2) / (cosh(2 pi y2) - cos(2 pi y1))
inline std::pair<double, double> green_gradient(double y1, double y2) {
  const double pi = std::numbers::pi;
  if (singular_distance(y1, y2) <= 0.0)
    throw singularity_error("green_gradient: evaluation at a lattice singularity");
  const double a = std::abs(y2);
  const double sgn = y2 < 0.0 ? -1.0 : 1.0;
  if (a > kGreenFarFieldSwitch) {
    // Scale numerator and denominator by 2 e^{-2 pi a}.
    const double q = std::exp(-2.0 * pi * a);
    const double den = 1.0 + q * q - 2.0 * q * std::cos(2.0 * pi * y1);
    const double g1 = -std::sin(2.0 * pi * y1) * q / den;
    const double g2 = -0.5 * sgn * (1.0 - q * q) / den;
    return {g1, g2};
  }
  const double den = std::cosh(2.0 * pi * y2) - std::cos(2.0 * pi * y1);
  return {-0.5 * std::sin(2.0 * pi * y1) / den, -0.5 * std::sinh(2.0 * pi * y2) / den};
}

/// Second vertical derivative d2^2 G = -pi (1 - cos(2 pi y1) cosh(2 pi y2))
/// / (cosh - cos)^2, evaluated in ratio form so the exponentially small far
/// field keeps full relative accuracy.
inline double green_hessian22(double y1, double y2) {
  const double pi = std::numbers::pi;
  if (singular_distance(y1, y2) <= 0.0)
    throw singularity_error("green_hessian22: evaluation at a lattice singularity");
  const double c = std::cos(2.0 * pi * y1);
  const double a = std::abs(y2);
  if (a > 2.0) {
    // (1 - c C)/(C - c)^2 with C = cosh(2 pi a), scaled by 4 e^{-4 pi a}.
    const double q = std::exp(-2.0 * pi * a);
    const double num = 4.0 * q * q - 2.0 * c * q * (1.0 + q * q);
    const double den = 1.0 + q * q - 2.0 * c * q;
    return -pi * num / (den * den);
  }
  const double C = std::cosh(2.0 * pi * y2);
  const double den = C - c;
  return -pi * (1.0 - c * C) / (den * den);
}

/// Vertical convolution kernel of horizontal mode k != 0:
/// e^{-2 pi |k| |t|} / (4 pi |k|), the k-th horizontal Fourier row of G.
/// The mean mode is handled by double integration against G2 = -|t|/2.
inline double mode_kernel(int k, double t) {
  if (k == 0) throw std::invalid_argument("mode_kernel: k = 0 has no exponential kernel");
  const double ak = 2.0 * std::numbers::pi * std::abs(k);
  return std::exp(-ak * std::abs(t)) / (2.0 * ak);
}

/// Smooth remainder S = G + (1/2pi) ln(r) with r the distance to the
/// nearest singularity; analytic across the singular lattice, with
/// S(0,0) = -ln(2 pi)/(2 pi). Used by quadratures that peel off the flat
/// logarithmic parallel.
inline double green_smooth_remainder(double y1, double y2) {
  const double pi = std::numbers::pi;
  const double w = wrap_periodic(y1);
  const double r2 = w * w + y2 * y2;
  if (r2 < 1e-6) {
    // 2 (cosh - cos) = 4 pi^2 r^2 (1 + pi^2 (y2^2 - y1^2)/3 + O(r^4))
    const double corr = pi * pi * (y2 * y2 - w * w) / 3.0;
    return -(std::log(2.0 * pi) + 0.5 * std::log1p(corr)) / (2.0 * pi);
  }
  const double num = 2.0 * (std::cosh(2.0 * pi * y2) - std::cos(2.0 * pi * y1));
  return -std::log(num / r2) / (4.0 * pi);
}

}  // namespace strip
