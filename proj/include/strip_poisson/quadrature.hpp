#pragma once

#include <cmath>
#include <limits>
#include <vector>

#include "strip_poisson/errors.hpp"
#include "strip_poisson/grid.hpp"
#include "strip_poisson/weight_spaces.hpp"

namespace strip {

/// Quadrature value plus an estimate of the neglected tail |y2| > L.
/// The tail is a reported bound, never folded into the value.
struct QuadResult {
  double value = 0.0;
  double tail = 0.0;
};

/// Composite Simpson weights for an odd node count (even interval count).
inline std::vector<double> simpson_weights(int n, double h) {
  std::vector<double> w(static_cast<size_t>(n), 0.0);
  for (int j = 0; j + 2 < n; j += 2) {
    w[static_cast<size_t>(j)] += h / 3.0;
    w[static_cast<size_t>(j) + 1] += 4.0 * h / 3.0;
    w[static_cast<size_t>(j) + 2] += h / 3.0;
  }
  return w;
}

namespace detail {

/// Bound for the model tail 2 * int_L^inf t^s (ln t)^p dt, scaled by the
/// fitted boundary amplitude. Infinite when the model diverges.
inline double tail_model_integral(double s, int p, double L) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  const double lnL = std::log(L);
  if (s > -1.0 - 1e-9) {
    if (std::abs(s + 1.0) <= 1e-9 && p <= -2) {
      // int_L^inf dt / (t ln^{-p} t) = ln^{p+1}(L) / (-p - 1)
      return 2.0 * std::pow(lnL, p + 1) / (-p - 1.0);
    }
    return inf;
  }
  double v = 2.0 * std::pow(L, s + 1.0) / (-s - 1.0);
  if (p < 0) v *= std::pow(lnL, p);          // decreasing factor, rigorous
  if (p > 0) v *= 2.0 * std::pow(lnL, p);    // crude growth allowance
  return v;
}

/// Tail estimate with an integrand envelope declared through `decay` (for
/// the product f*w as integrated). `boundary` is the mean |f*w| over the
/// two outermost node rows.
inline double tail_estimate(const StripGrid& g, const DecayClass& decay, int log_power,
                            double boundary_lo, double boundary_hi, double prev_lo,
                            double prev_hi) {
  if (decay.is_schwartz()) {
    // Geometric extrapolation from the last two rows of each side.
    auto side = [&](double last, double prev) {
      if (last <= 0.0) return 0.0;
      if (prev > 0.0 && last < prev) {
        const double r = last / prev;
        return g.h2 * last * r / (1.0 - r);
      }
      return 2.0 * g.h2 * last;
    };
    return side(boundary_lo, prev_lo) + side(boundary_hi, prev_hi);
  }
  const double boundary = 0.5 * (boundary_lo + boundary_hi);
  if (boundary == 0.0) return 0.0;  // nothing reaches the truncation edge
  const double s = decay.envelope_exponent();
  const double model = tail_model_integral(s, log_power, g.L);
  if (!std::isfinite(model)) return model;
  const double scale = std::pow(1.0 + g.L * g.L, 0.5 * s) *
                       (log_power != 0 ? std::pow(std::log(2.0 + g.L * g.L),
                                                  static_cast<double>(log_power))
                                       : 1.0);
  const double amp = scale > 0.0 ? boundary / scale : 0.0;
  return amp * model;
}

}  // namespace detail

/// Integral of f * w over (0,1) x [-L, L]: equal weights on the periodic
/// direction (exact for resolved trigonometric modes), composite Simpson on
/// the vertical one. Throws non_integrable_error when the declared decay of
/// f against w has a divergent tail.
inline QuadResult integrate(const StripField& f, const WeightFunction& w) {
  const StripGrid& g = f.grid;
  const auto wj = simpson_weights(g.n2, g.h2);

  double acc = 0.0;
  for (int j = 0; j < g.n2; ++j) {
    double row = 0.0;
    for (int i = 0; i < g.n1; ++i) row += f.at(i, j);
    acc += wj[static_cast<size_t>(j)] * w(g.y2(j)) * (row / g.n1);
  }

  auto row_absmean = [&](int j) {
    double r = 0.0;
    for (int i = 0; i < g.n1; ++i) r += std::abs(f.at(i, j));
    return (r / g.n1) * std::abs(w(g.y2(j)));
  };

  // Envelope of the product f * w.
  DecayClass prod = f.decay;
  int log_power = w.log_power;
  if (!prod.is_schwartz()) {
    prod = DecayClass::poly(prod.envelope_exponent() + w.alpha);
  }
  const double tail =
      detail::tail_estimate(g, prod, log_power, row_absmean(0), row_absmean(g.n2 - 1),
                            row_absmean(1), row_absmean(g.n2 - 2));
  if (!std::isfinite(tail))
    throw non_integrable_error("integrate: declared decay class not integrable against weight");
  return {acc, tail};
}

/// Grid-only integral of f * w, no tail accounting (internal comparisons on
/// the truncated domain).
inline double integrate_grid(const StripField& f, const std::function<double(double)>& w2) {
  const StripGrid& g = f.grid;
  const auto wj = simpson_weights(g.n2, g.h2);
  double acc = 0.0;
  for (int j = 0; j < g.n2; ++j) {
    double row = 0.0;
    for (int i = 0; i < g.n1; ++i) row += f.at(i, j);
    acc += wj[static_cast<size_t>(j)] * w2(g.y2(j)) * (row / g.n1);
  }
  return acc;
}

/// Plain L2(grid) inner product and norm on the truncated strip.
inline double inner_grid(const StripField& a, const StripField& b,
                         const std::function<double(double)>& w2 = nullptr) {
  const StripGrid& g = a.grid;
  const auto wj = simpson_weights(g.n2, g.h2);
  double acc = 0.0;
  for (int j = 0; j < g.n2; ++j) {
    double row = 0.0;
    for (int i = 0; i < g.n1; ++i) row += a.at(i, j) * b.at(i, j);
    const double wgt = w2 ? w2(g.y2(j)) : 1.0;
    acc += wj[static_cast<size_t>(j)] * wgt * (row / g.n1);
  }
  return acc;
}

inline double norm_grid(const StripField& a) { return std::sqrt(std::max(0.0, inner_grid(a, a))); }

/// Horizontal average at every vertical node: ubar(y2) = int_0^1 u dy1.
inline std::vector<double> horizontal_average(const StripField& f) {
  std::vector<double> m(static_cast<size_t>(f.grid.n2), 0.0);
  for (int j = 0; j < f.grid.n2; ++j) {
    double r = 0.0;
    for (int i = 0; i < f.grid.n1; ++i) r += f.at(i, j);
    m[static_cast<size_t>(j)] = r / f.grid.n1;
  }
  return m;
}

/// Compatibility moments <f, 1> and <f, y2> over the truncated strip.
inline std::pair<double, double> moments(const StripField& f) {
  const StripGrid& g = f.grid;
  const auto wj = simpson_weights(g.n2, g.h2);
  const auto fbar = horizontal_average(f);
  double mass = 0.0, dipole = 0.0;
  for (int j = 0; j < g.n2; ++j) {
    mass += wj[static_cast<size_t>(j)] * fbar[static_cast<size_t>(j)];
    dipole += wj[static_cast<size_t>(j)] * g.y2(j) * fbar[static_cast<size_t>(j)];
  }
  return {mass, dipole};
}

}  // namespace strip
