#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace strip {

// Index calculus of the weighted Sobolev family H^m_{alpha,#}(Z) on the
// periodic strip Z = (0,1) x R, with weight rho(y2) = (1 + y2^2)^{1/2}.
//
//   k(m, alpha) : order up to which the norm carries the logarithmic factor
//                 (ln(1 + rho^2))^{-1}; equals -1 outside the critical set
//                 alpha in {1/2, ..., m - 1/2}.
//   q(m, alpha) : largest degree q with y2^q in H^m_{alpha,#}(Z); negative
//                 values mean the admissible polynomial space is {0}.
//
// Both are exact integer computations; half-integer detection uses a small
// tolerance so values that went through arithmetic still classify correctly.

namespace detail {
inline constexpr double kHalfIntegerTol = 1e-9;

inline bool near_integer(double x, double& rounded) {
  rounded = std::round(x);
  return std::abs(x - rounded) < kHalfIntegerTol;
}
}  // namespace detail

/// k(m, alpha): -1 unless alpha lies in {1/2, 3/2, ..., m - 1/2}, in which
/// case m - 1/2 - alpha (an integer in [0, m-1]).
inline int compute_k(int m, double alpha) {
  if (m < 0) throw std::invalid_argument("compute_k: m must be non-negative");
  double r = 0.0;
  if (!detail::near_integer(2.0 * alpha, r)) return -1;
  const long n = std::lround(r);  // 2*alpha
  if (n < 1 || n % 2 == 0 || n > 2L * m - 1) return -1;
  return static_cast<int>(std::lround(m - 0.5 - alpha));
}

/// q(m, alpha): m - 3/2 - alpha when alpha + 1/2 is a non-positive integer,
/// otherwise floor(m - 1/2 - alpha). Negative return = empty space.
inline int compute_q(int m, double alpha) {
  double r = 0.0;
  const double t = alpha + 0.5;
  if (detail::near_integer(t, r) && r <= 0.0) {
    return m - 1 + static_cast<int>(std::lround(-r));  // m - 3/2 - alpha
  }
  return static_cast<int>(std::floor(m - 0.5 - alpha));
}

/// Identity card of a weighted space: the pair (m, alpha) plus its derived
/// critical indices.
struct WeightSpec {
  int m;
  double alpha;
  int k_crit;                     // -1 when non-critical
  int q_poly;                     // largest admissible monomial degree
  bool is_critical;               // alpha in {1/2, ..., m - 1/2}
  bool is_half_integer_critical;  // alpha + 1/2 non-positive integer

  WeightSpec(int m_, double alpha_)
      : m(m_),
        alpha(alpha_),
        k_crit(compute_k(m_, alpha_)),
        q_poly(compute_q(m_, alpha_)),
        is_critical(k_crit >= 0),
        is_half_integer_critical(false) {
    double r = 0.0;
    is_half_integer_critical = detail::near_integer(alpha_ + 0.5, r) && r <= 0.0;
  }
};

/// rho^alpha (ln(1 + rho^2))^p with rho(y2) = sqrt(1 + y2^2); strictly
/// positive and even in y2. log_power is 0, +1 or -1 in the norm
/// definitions; squared-integrand weights use -2.
struct WeightFunction {
  double alpha = 0.0;
  int log_power = 0;

  double operator()(double y2) const {
    const double rho2 = 1.0 + y2 * y2;
    double v = std::pow(rho2, 0.5 * alpha);
    if (log_power != 0) v *= std::pow(std::log(1.0 + rho2), log_power);
    return v;
  }
};

/// One-variable polynomial in y2, coeffs[i] multiplying y2^i.
struct PolyElement {
  std::vector<double> coeffs;

  PolyElement() = default;
  explicit PolyElement(std::vector<double> c) : coeffs(std::move(c)) {}

  /// Degree ignoring trailing zeros; -1 for the zero polynomial.
  int degree() const {
    for (int i = static_cast<int>(coeffs.size()) - 1; i >= 0; --i)
      if (coeffs[static_cast<size_t>(i)] != 0.0) return i;
    return -1;
  }

  double eval(double y2) const {
    double acc = 0.0;
    for (size_t i = coeffs.size(); i-- > 0;) acc = acc * y2 + coeffs[i];
    return acc;
  }

  /// Laplacian restricted to functions of y2 only: the second derivative.
  PolyElement laplacian() const {
    if (coeffs.size() < 3) return PolyElement{};
    std::vector<double> d(coeffs.size() - 2);
    for (size_t i = 0; i + 2 < coeffs.size(); ++i)
      d[i] = coeffs[i + 2] * static_cast<double>((i + 2) * (i + 1));
    return PolyElement{std::move(d)};
  }

  /// Harmonic iff every coefficient of degree >= 2 vanishes.
  bool is_harmonic() const {
    for (size_t i = 2; i < coeffs.size(); ++i)
      if (coeffs[i] != 0.0) return false;
    return true;
  }
};

/// Monomial basis of P'_j (degree <= j, functions of y2 only); empty for
/// j < 0. With harmonic_only, the span {1, y2} truncated at degree min(j,1).
inline std::vector<PolyElement> poly_basis(int j, bool harmonic_only) {
  std::vector<PolyElement> basis;
  if (j < 0) return basis;
  const int top = harmonic_only ? std::min(j, 1) : j;
  for (int d = 0; d <= top; ++d) {
    std::vector<double> c(static_cast<size_t>(d) + 1, 0.0);
    c.back() = 1.0;
    basis.emplace_back(std::move(c));
  }
  return basis;
}

}  // namespace strip
