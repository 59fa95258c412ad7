#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace strip {

// O(n) convolution with the two-sided exponential kernel c * e^{-a|x - s|}
// on a uniform grid, split into the forward and backward first-order
// recurrences
//
//   P_{j+1} = e^{-ah} P_j + int_{x_j}^{x_{j+1}} e^{-a(x_{j+1}-s)} f(s) ds
//   Q_j     = e^{-ah} Q_{j+1} + int_{x_j}^{x_{j+1}} e^{-a(x_j - s) *(-1)} ...
//
// with the segment integrals evaluated in closed form against the local
// cubic interpolant of f (4-point Lagrange, shifted stencils at the ends).
// The scheme is exact for piecewise-cubic data and O(h^4) for smooth f,
// and treats f as zero outside the grid, which matches decaying data on a
// truncated vertical line.

namespace detail {

/// mu_p(z) = int_0^1 e^{-z(1-t)} t^p dt and nu_p(z) = int_0^1 e^{-zt} t^p dt
/// for p = 0..3. Series for small z (avoids cancellation), integration by
/// parts recurrences otherwise.
struct ExpMoments {
  std::array<double, 4> mu{};
  std::array<double, 4> nu{};

  explicit ExpMoments(double z) {
    if (z < 2.0) {
      for (int p = 0; p <= 3; ++p) {
        // mu_p = p! sum_{n>=0} (-z)^n / (n+p+1)!
        double factp = 1.0;
        for (int i = 2; i <= p; ++i) factp *= i;
        double term = factp, denom = 1.0;
        for (int i = 1; i <= p + 1; ++i) denom *= i;
        term /= denom;  // n = 0 term
        double s = term;
        for (int n = 1; n < 30; ++n) {
          term *= -z / (n + p + 1);
          s += term;
          if (std::abs(term) < 1e-18 * std::abs(s)) break;
        }
        mu[static_cast<size_t>(p)] = s;
        // nu_p = sum_{n>=0} (-z)^n / (n! (n+p+1))
        double t2 = 1.0 / (p + 1), s2 = t2, zn = 1.0;
        for (int n = 1; n < 30; ++n) {
          zn *= -z / n;
          const double add = zn / (n + p + 1);
          s2 += add;
          if (std::abs(add) < 1e-18 * std::abs(s2)) break;
        }
        nu[static_cast<size_t>(p)] = s2;
      }
    } else {
      const double e = std::exp(-z);
      mu[0] = (1.0 - e) / z;
      nu[0] = mu[0];
      for (int p = 1; p <= 3; ++p) {
        mu[static_cast<size_t>(p)] = (1.0 - p * mu[static_cast<size_t>(p) - 1]) / z;
        nu[static_cast<size_t>(p)] = (-e + p * nu[static_cast<size_t>(p) - 1]) / z;
      }
    }
  }
};

/// Coefficients of the cubic through values at integer offsets
/// {o, o+1, o+2, o+3} (o in {-2,-1,0}) expressed in the monomial basis of
/// the local coordinate t, so that sum_p c_p t^p interpolates the data.
inline std::array<std::array<double, 4>, 4> lagrange_to_monomial(int o) {
  std::array<std::array<double, 4>, 4> M{};  // M[p][r]: coefficient of node r in c_p
  // Solve the 4x4 Vandermonde system V c = f by explicit elimination
  // against unit vectors; sizes are tiny so clarity wins.
  double V[4][4];
  for (int r = 0; r < 4; ++r) {
    const double x = o + r;
    V[r][0] = 1.0;
    V[r][1] = x;
    V[r][2] = x * x;
    V[r][3] = x * x * x;
  }
  for (int rhs = 0; rhs < 4; ++rhs) {
    double A[4][5];
    for (int r = 0; r < 4; ++r) {
      for (int cx = 0; cx < 4; ++cx) A[r][cx] = V[r][cx];
      A[r][4] = r == rhs ? 1.0 : 0.0;
    }
    for (int col = 0; col < 4; ++col) {
      int piv = col;
      for (int r = col + 1; r < 4; ++r)
        if (std::abs(A[r][col]) > std::abs(A[piv][col])) piv = r;
      for (int cx = 0; cx < 5; ++cx) std::swap(A[col][cx], A[piv][cx]);
      for (int r = 0; r < 4; ++r) {
        if (r == col) continue;
        const double fpiv = A[r][col] / A[col][col];
        for (int cx = col; cx < 5; ++cx) A[r][cx] -= fpiv * A[col][cx];
      }
    }
    for (int p = 0; p < 4; ++p) M[static_cast<size_t>(p)][static_cast<size_t>(rhs)] =
        A[p][4] / A[p][p];
  }
  return M;
}

}  // namespace detail

/// u(x_j) = c * int e^{-a |x_j - s|} f(s) ds with f piecewise-cubic through
/// its samples and zero outside the grid. Requires a > 0.
inline std::vector<double> exp_convolve(const std::vector<double>& f, double h, double a,
                                        double c) {
  const int n = static_cast<int>(f.size());
  if (n < 4) throw std::invalid_argument("exp_convolve: need at least 4 samples");
  if (!(a > 0.0) || !(h > 0.0)) throw std::invalid_argument("exp_convolve: a, h must be positive");

  const double z = a * h;
  const double d = std::exp(-z);
  const detail::ExpMoments mom(z);
  const auto M0 = detail::lagrange_to_monomial(0);    // first segment
  const auto Mm1 = detail::lagrange_to_monomial(-1);  // interior
  const auto Mm2 = detail::lagrange_to_monomial(-2);  // last segment

  // Per-segment coefficients c_p of the local cubic about x_j on [x_j, x_{j+1}].
  auto segment_coeffs = [&](int j, std::array<double, 4>& cp) {
    int b = j - 1;
    const std::array<std::array<double, 4>, 4>* M = &Mm1;
    if (b < 0) {
      b = 0;
      M = &M0;
    } else if (b > n - 4) {
      b = n - 4;
      M = b == j - 2 ? &Mm2 : &Mm1;
    }
    for (int p = 0; p < 4; ++p) {
      double s = 0.0;
      for (int r = 0; r < 4; ++r)
        s += (*M)[static_cast<size_t>(p)][static_cast<size_t>(r)] * f[static_cast<size_t>(b + r)];
      cp[static_cast<size_t>(p)] = s;
    }
  };

  std::vector<double> P(static_cast<size_t>(n), 0.0), Q(static_cast<size_t>(n), 0.0);
  std::array<double, 4> cp{};
  for (int j = 0; j + 1 < n; ++j) {
    segment_coeffs(j, cp);
    double seg = 0.0;
    for (int p = 0; p < 4; ++p) seg += cp[static_cast<size_t>(p)] * mom.mu[static_cast<size_t>(p)];
    P[static_cast<size_t>(j) + 1] = d * P[static_cast<size_t>(j)] + h * seg;
  }
  for (int j = n - 2; j >= 0; --j) {
    segment_coeffs(j, cp);
    double seg = 0.0;
    for (int p = 0; p < 4; ++p) seg += cp[static_cast<size_t>(p)] * mom.nu[static_cast<size_t>(p)];
    Q[static_cast<size_t>(j)] = d * Q[static_cast<size_t>(j) + 1] + h * seg;
  }

  std::vector<double> out(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j)
    out[static_cast<size_t>(j)] = c * (P[static_cast<size_t>(j)] + Q[static_cast<size_t>(j)]);
  return out;
}

/// Cell integrals int_{x_j}^{x_{j+1}} f via the 4-point interpolatory rule
/// (-f_{j-1} + 13 f_j + 13 f_{j+1} - f_{j+2}) h / 24, shifted at the ends;
/// then prefix sums anchored so the cumulative vanishes at `anchor`.
inline std::vector<double> cumulative_integral(const std::vector<double>& f, double h,
                                               int anchor) {
  const int n = static_cast<int>(f.size());
  if (n < 4) throw std::invalid_argument("cumulative_integral: need at least 4 samples");
  if (anchor < 0 || anchor >= n) throw std::invalid_argument("cumulative_integral: bad anchor");
  std::vector<double> cell(static_cast<size_t>(n) - 1);
  for (int j = 0; j + 1 < n; ++j) {
    double s;
    if (j == 0) {
      s = (9 * f[0] + 19 * f[1] - 5 * f[2] + f[3]) / 24.0;
    } else if (j == n - 2) {
      s = (9 * f[static_cast<size_t>(n) - 1] + 19 * f[static_cast<size_t>(n) - 2] -
           5 * f[static_cast<size_t>(n) - 3] + f[static_cast<size_t>(n) - 4]) /
          24.0;
    } else {
      s = (-f[static_cast<size_t>(j) - 1] + 13 * f[static_cast<size_t>(j)] +
           13 * f[static_cast<size_t>(j) + 1] - f[static_cast<size_t>(j) + 2]) /
          24.0;
    }
    cell[static_cast<size_t>(j)] = h * s;
  }
  std::vector<double> F(static_cast<size_t>(n), 0.0);
  for (int j = anchor + 1; j < n; ++j)
    F[static_cast<size_t>(j)] = F[static_cast<size_t>(j) - 1] + cell[static_cast<size_t>(j) - 1];
  for (int j = anchor - 1; j >= 0; --j)
    F[static_cast<size_t>(j)] = F[static_cast<size_t>(j) + 1] - cell[static_cast<size_t>(j)];
  return F;
}

}  // namespace strip
