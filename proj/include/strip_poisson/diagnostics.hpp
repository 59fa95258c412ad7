#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "strip_poisson/derivatives.hpp"
#include "strip_poisson/errors.hpp"
#include "strip_poisson/grid.hpp"
#include "strip_poisson/quadrature.hpp"
#include "strip_poisson/weight_spaces.hpp"

namespace strip {

// Verification layer: weighted norms of H^m_{alpha,#}(Z) (logarithmic
// factors included in the critical cases), quotient norms over polynomial
// corrections, the X-space norms, Hardy and Poincare-Wirtinger checkers,
// and least-squares decay fits. Inequality checkers return both sides and
// never assert internally; tolerance policy belongs to the caller.

namespace detail {

/// All multi-indices (l1, l2) with l1 + l2 <= m, ordered by total degree.
inline std::vector<std::array<int, 2>> multi_indices(int m) {
  std::vector<std::array<int, 2>> out;
  for (int total = 0; total <= m; ++total)
    for (int l1 = total; l1 >= 0; --l1) out.push_back({l1, total - l1});
  return out;
}

inline StripField partial(const StripField& u, int l1, int l2) {
  StripField out = u;
  if (l2 > 0) out = differentiate(out, Direction::y2, l2);
  if (l1 > 0) out = differentiate(out, Direction::y1, l1);
  return out;
}

/// Pointwise square with the decay envelope squared.
inline StripField squared(const StripField& f) {
  StripField g = f;
  for (double& x : g.v) x *= x;
  if (!g.decay.is_schwartz()) g.decay = DecayClass::poly(2.0 * g.decay.envelope_exponent());
  return g;
}

/// Tiny symmetric Jacobi eigensolver; enough for the (j+1)x(j+1) Gram
/// matrices of the quotient minimization.
inline std::vector<double> sym_eigenvalues(std::vector<std::vector<double>> A) {
  const int n = static_cast<int>(A.size());
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off += A[p][q] * A[p][q];
    if (off < 1e-30) break;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) {
        if (std::abs(A[p][q]) < 1e-300) continue;
        const double theta = 0.5 * std::atan2(2.0 * A[p][q], A[q][q] - A[p][p]);
        const double c = std::cos(theta), s = std::sin(theta);
        for (int r = 0; r < n; ++r) {
          const double arp = A[r][p], arq = A[r][q];
          A[r][p] = c * arp - s * arq;
          A[r][q] = s * arp + c * arq;
        }
        for (int r = 0; r < n; ++r) {
          const double apr = A[p][r], aqr = A[q][r];
          A[p][r] = c * apr - s * aqr;
          A[q][r] = s * apr + c * aqr;
        }
      }
  }
  std::vector<double> ev(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) ev[static_cast<size_t>(i)] = A[i][i];
  return ev;
}

/// Solve the small SPD system by Gaussian elimination with partial pivoting.
inline std::vector<double> solve_dense(std::vector<std::vector<double>> A, std::vector<double> b) {
  const int n = static_cast<int>(A.size());
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(A[r][col]) > std::abs(A[piv][col])) piv = r;
    std::swap(A[col], A[piv]);
    std::swap(b[static_cast<size_t>(col)], b[static_cast<size_t>(piv)]);
    if (A[col][col] == 0.0) throw conditioning_error("quotient_norm: singular Gram matrix");
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      const double f = A[r][col] / A[col][col];
      for (int cx = col; cx < n; ++cx) A[r][cx] -= f * A[col][cx];
      b[static_cast<size_t>(r)] -= f * b[static_cast<size_t>(col)];
    }
  }
  std::vector<double> x(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) x[static_cast<size_t>(i)] = b[static_cast<size_t>(i)] / A[i][i];
  return x;
}

}  // namespace detail

/// Weighted Sobolev norm of H^m_{alpha,#}(Z): the logarithmic factor
/// (ln(1+rho^2))^{-1} multiplies every derivative of order <= k(m, alpha),
/// plain power weights above. Returns the value together with the summed
/// truncation-tail estimate.
inline QuadResult weighted_norm(const StripField& u, const WeightSpec& spec) {
  if (spec.m < 0 || spec.m > 2)
    throw std::invalid_argument("weighted_norm: m must be 0, 1 or 2");
  double acc = 0.0, tail = 0.0;
  for (const auto& [l1, l2] : detail::multi_indices(spec.m)) {
    const int order = l1 + l2;
    const StripField d = detail::partial(u, l1, l2);
    const StripField sq = detail::squared(d);
    WeightFunction w;
    w.alpha = 2.0 * (spec.alpha - spec.m + order);
    w.log_power = order <= spec.k_crit ? -2 : 0;
    const QuadResult q = integrate(sq, w);
    acc += q.value;
    tail += q.tail;
  }
  return {std::sqrt(std::max(0.0, acc)), tail};
}

/// weighted_norm with u split into horizontal mean plus fluctuation. The
/// two parts are L^2(0,1)-orthogonal at every height, so the squared norms
/// add exactly. Solutions of the strip problem carry their polynomial
/// growth in the mean mode only (the admissible polynomials depend on y2
/// alone), so the fluctuation is rapidly decreasing and the declared tail
/// class applies to the mean part.
inline QuadResult weighted_norm_mean_split(const StripField& u, const WeightSpec& spec) {
  const StripGrid& g = u.grid;
  const auto ubar = horizontal_average(u);
  StripField mean(g, u.decay);
  StripField fluct(g, DecayClass::schwartz());
  for (int i = 0; i < g.n1; ++i)
    for (int j = 0; j < g.n2; ++j) {
      mean.at(i, j) = ubar[static_cast<size_t>(j)];
      fluct.at(i, j) = u.at(i, j) - ubar[static_cast<size_t>(j)];
    }
  const QuadResult qm = weighted_norm(mean, spec);
  const QuadResult qf = weighted_norm(fluct, spec);
  return {std::sqrt(qm.value * qm.value + qf.value * qf.value), qm.tail + qf.tail};
}

/// Quotient norm inf over p in P'_j of |u + p|_{spec} together with the
/// minimizer, by solving the weighted normal equations. The Gram condition
/// number is guarded at 1e12.
struct QuotientResult {
  double value = 0.0;
  PolyElement argmin;
};

inline QuotientResult quotient_norm(const StripField& u, const WeightSpec& spec, int j) {
  if (j < 0) {
    return {weighted_norm(u, spec).value, PolyElement{}};
  }
  const int nb = j + 1;
  if (nb > 8) throw std::invalid_argument("quotient_norm: polynomial degree above 7 unsupported");
  const auto idx = detail::multi_indices(spec.m);

  // Per-term weights as plain functions of y2.
  auto term_weight = [&](int order) {
    WeightFunction w;
    w.alpha = 2.0 * (spec.alpha - spec.m + order);
    w.log_power = order <= spec.k_crit ? -2 : 0;
    return w;
  };

  // Derivative stacks: FD for the field, exact differentiation for the
  // monomial basis.
  std::vector<StripField> du;
  du.reserve(idx.size());
  for (const auto& [l1, l2] : idx) du.push_back(detail::partial(u, l1, l2));

  auto monomial_deriv = [&](int deg, int l1, int l2) {
    // d^{l1}_{y1} d^{l2}_{y2} y2^deg, constant in y1
    if (l1 > 0) return std::function<double(double)>([](double) { return 0.0; });
    double coef = 1.0;
    int d = deg;
    for (int t = 0; t < l2; ++t) {
      coef *= d;
      --d;
    }
    if (d < 0) return std::function<double(double)>([](double) { return 0.0; });
    const int dd = d;
    const double cc = coef;
    return std::function<double(double)>([cc, dd](double y2) { return cc * std::pow(y2, dd); });
  };

  const StripGrid& g = u.grid;
  const auto wj = simpson_weights(g.n2, g.h2);
  std::vector<std::vector<double>> G(static_cast<size_t>(nb),
                                     std::vector<double>(static_cast<size_t>(nb), 0.0));
  std::vector<double> rhs(static_cast<size_t>(nb), 0.0);
  double uu = 0.0;

  for (size_t t = 0; t < idx.size(); ++t) {
    const auto [l1, l2] = idx[t];
    const WeightFunction w = term_weight(l1 + l2);
    const auto ubar_term = horizontal_average(du[t]);
    for (int jn = 0; jn < g.n2; ++jn) {
      const double y = g.y2(jn);
      const double w2 = w(y);  // built with alpha doubled: the squared norm weight
      const double quad = wj[static_cast<size_t>(jn)] * w2;
      // basis values at this height
      std::array<double, 8> bv{};
      for (int i = 0; i < nb; ++i) bv[static_cast<size_t>(i)] = monomial_deriv(i, l1, l2)(y);
      double urow = 0.0;
      for (int ii = 0; ii < g.n1; ++ii) urow += du[t].at(ii, jn) * du[t].at(ii, jn);
      uu += quad * urow / g.n1;
      const double um = ubar_term[static_cast<size_t>(jn)];
      for (int i = 0; i < nb; ++i) {
        rhs[static_cast<size_t>(i)] += quad * um * bv[static_cast<size_t>(i)];
        for (int l = i; l < nb; ++l)
          G[static_cast<size_t>(i)][static_cast<size_t>(l)] +=
              quad * bv[static_cast<size_t>(i)] * bv[static_cast<size_t>(l)];
      }
    }
  }
  for (int i = 0; i < nb; ++i)
    for (int l = 0; l < i; ++l) G[static_cast<size_t>(i)][static_cast<size_t>(l)] =
        G[static_cast<size_t>(l)][static_cast<size_t>(i)];

  const auto ev = detail::sym_eigenvalues(G);
  const double emax = *std::max_element(ev.begin(), ev.end());
  const double emin = *std::min_element(ev.begin(), ev.end());
  if (!(emin > 0.0) || emax / emin > 1e12)
    throw conditioning_error("quotient_norm: Gram condition number above 1e12");

  std::vector<double> neg_rhs(rhs);
  for (double& x : neg_rhs) x = -x;
  const std::vector<double> c = detail::solve_dense(G, neg_rhs);

  double val2 = uu;
  for (int i = 0; i < nb; ++i) val2 += c[static_cast<size_t>(i)] * rhs[static_cast<size_t>(i)];
  PolyElement argmin{std::vector<double>(c.begin(), c.end())};
  return {std::sqrt(std::max(0.0, val2)), std::move(argmin)};
}

/// Plain L2(grid) distance between two fields modulo P'_j (j <= 1),
/// relative to |a|. Used by the cross-method oracles.
inline double quotient_l2_distance(const StripField& a, const StripField& b, int j) {
  StripField diff = a;
  diff -= b;
  const StripGrid& g = a.grid;
  const auto wj = simpson_weights(g.n2, g.h2);
  const int nb = j + 1;
  std::vector<std::vector<double>> G(static_cast<size_t>(nb),
                                     std::vector<double>(static_cast<size_t>(nb), 0.0));
  std::vector<double> rhs(static_cast<size_t>(nb), 0.0);
  const auto dbar = horizontal_average(diff);
  double dd = inner_grid(diff, diff);
  for (int jn = 0; jn < g.n2; ++jn) {
    const double y = g.y2(jn);
    const double quad = wj[static_cast<size_t>(jn)];
    double bv[2] = {1.0, y};
    for (int i = 0; i < nb; ++i) {
      rhs[static_cast<size_t>(i)] += quad * dbar[static_cast<size_t>(jn)] * bv[i];
      for (int l = i; l < nb; ++l)
        G[static_cast<size_t>(i)][static_cast<size_t>(l)] += quad * bv[i] * bv[l];
    }
  }
  for (int i = 0; i < nb; ++i)
    for (int l = 0; l < i; ++l) G[static_cast<size_t>(i)][static_cast<size_t>(l)] =
        G[static_cast<size_t>(l)][static_cast<size_t>(i)];
  std::vector<double> neg(rhs);
  for (double& x : neg) x = -x;
  const auto c = detail::solve_dense(G, neg);
  double v2 = dd;
  for (int i = 0; i < nb; ++i) v2 += c[static_cast<size_t>(i)] * rhs[static_cast<size_t>(i)];
  const double na = norm_grid(a);
  return na > 0.0 ? std::sqrt(std::max(0.0, v2)) / na : std::sqrt(std::max(0.0, v2));
}

/// Unweighted H^order norm restricted to the local window (0,1) x (-1,1)
/// (largest symmetric node range inside it).
inline double local_sobolev_norm(const StripField& u, int order) {
  const StripGrid& g = u.grid;
  int J = static_cast<int>(std::floor(1.0 / g.h2 + 1e-9));
  J = std::max(1, std::min(J, g.center()));
  const int lo = g.center() - J;
  const auto wj = simpson_weights(2 * J + 1, g.h2);
  double acc = 0.0;
  for (const auto& [l1, l2] : detail::multi_indices(order)) {
    const StripField d = detail::partial(u, l1, l2);
    for (int t = 0; t <= 2 * J; ++t) {
      double row = 0.0;
      for (int i = 0; i < g.n1; ++i) row += d.at(i, lo + t) * d.at(i, lo + t);
      acc += wj[static_cast<size_t>(t)] * row / g.n1;
    }
  }
  return std::sqrt(std::max(0.0, acc));
}

/// Norm of the generalized space X^{m+p}_{alpha_base+p,#}(Z):
/// ( sum_{l=0..p} |y2^l u|^2_{H^{m+l}_{alpha_base}} + |u|^2_{H^{m+p}(Z^1)} )^{1/2}.
/// At p = 0 the space and the norm coincide with H^m_{alpha_base,#}(Z)
/// exactly, so the redundant local term is dropped there.
inline QuadResult x_space_norm(const StripField& u, int m, double alpha_base, int p) {
  if (std::abs(std::abs(alpha_base) - 0.5) > 1e-9)
    throw std::invalid_argument("x_space_norm: alpha_base must be -1/2 or +1/2");
  if (p < 0 || p > 2 || m < 0 || m + p > 2)
    throw std::invalid_argument("x_space_norm: need p in [0,2] and m + p <= 2");
  if (p == 0) return weighted_norm(u, WeightSpec(m, alpha_base));
  double acc = 0.0, tail = 0.0;
  for (int l = 0; l <= p; ++l) {
    StripField yl_u = u;
    for (int i = 0; i < u.grid.n1; ++i)
      for (int jn = 0; jn < u.grid.n2; ++jn)
        yl_u.at(i, jn) = u.at(i, jn) * std::pow(u.grid.y2(jn), l);
    if (!yl_u.decay.is_schwartz())
      yl_u.decay = DecayClass::poly(yl_u.decay.envelope_exponent() + l);
    const QuadResult q = weighted_norm(yl_u, WeightSpec(m + l, alpha_base));
    acc += q.value * q.value;
    tail += q.tail;
  }
  const double loc = local_sobolev_norm(u, m + p);
  acc += loc * loc;
  return {std::sqrt(std::max(0.0, acc)), tail};
}

/// Uniform samples of a radial function on [R, R + (n-1) h].
struct RadialTable {
  double r0 = 0.0;
  double h = 0.0;
  std::vector<double> v;
};

struct HardyResult {
  double lhs = 0.0;
  double rhs = 0.0;
  double constant_used = 0.0;
  bool log_branch = false;
};

/// Both sides of the Hardy estimate on [R, infinity), truncated to the
/// table: lhs = int f^2 r^beta, rhs = (2/(beta+1))^2 int f'^2 r^{beta+2};
/// beta = -1 switches to the logarithmic variant with constant (4/3)^2.
/// Requires f(R) = 0 (compactly supported data) unless subtract_boundary.
inline HardyResult hardy_check(const RadialTable& f, double beta, double R,
                               bool subtract_boundary = false) {
  const int n = static_cast<int>(f.v.size());
  if (n < 9 || n % 2 == 0)
    throw std::invalid_argument("hardy_check: table needs an odd node count >= 9");
  if (std::abs(f.r0 - R) > 1e-12) throw std::invalid_argument("hardy_check: table must start at R");
  std::vector<double> vals = f.v;
  double scale = 0.0;
  for (double x : vals) scale = std::max(scale, std::abs(x));
  if (std::abs(vals[0]) > 1e-10 * std::max(1.0, scale)) {
    if (!subtract_boundary) throw std::invalid_argument("hardy_check: f(R) must vanish");
    for (double& x : vals) x -= f.v[0];
  }
  const bool log_branch = std::abs(beta + 1.0) < 1e-12;
  if (log_branch && R <= 1.0)
    throw std::invalid_argument("hardy_check: log branch requires R > 1");

  std::vector<double> fp(static_cast<size_t>(n));
  detail::fd_derivative(vals.data(), fp.data(), n, f.h, 1);

  const auto w = simpson_weights(n, f.h);
  double lhs = 0.0, rhs_int = 0.0;
  for (int i = 0; i < n; ++i) {
    const double r = R + i * f.h;
    if (log_branch) {
      const double lr = std::log(r);
      lhs += w[static_cast<size_t>(i)] * vals[static_cast<size_t>(i)] *
             vals[static_cast<size_t>(i)] / (lr * lr * r);
      rhs_int += w[static_cast<size_t>(i)] * fp[static_cast<size_t>(i)] *
                 fp[static_cast<size_t>(i)] * r;
    } else {
      lhs += w[static_cast<size_t>(i)] * vals[static_cast<size_t>(i)] *
             vals[static_cast<size_t>(i)] * std::pow(r, beta);
      rhs_int += w[static_cast<size_t>(i)] * fp[static_cast<size_t>(i)] *
                 fp[static_cast<size_t>(i)] * std::pow(r, beta + 2.0);
    }
  }
  const double cst = log_branch ? (4.0 / 3.0) * (4.0 / 3.0)
                                : (2.0 / (beta + 1.0)) * (2.0 / (beta + 1.0));
  return {lhs, cst * rhs_int, cst, log_branch};
}

struct PoincareResult {
  double lhs = 0.0;      // |u - ubar|_{L^2_alpha}
  double rhs = 0.0;      // full H^1_alpha seminorm
  double rhs_d1 = 0.0;   // |d1 u|_{L^2_alpha} alone (what the mode proof gives)
};

inline PoincareResult poincare_wirtinger_check(const StripField& u, double alpha) {
  const StripGrid& g = u.grid;
  const auto ubar = horizontal_average(u);
  StripField fluct = u;
  for (int i = 0; i < g.n1; ++i)
    for (int j = 0; j < g.n2; ++j) fluct.at(i, j) -= ubar[static_cast<size_t>(j)];
  const StripField d1 = differentiate(u, Direction::y1, 1);
  const StripField d2 = differentiate(u, Direction::y2, 1);
  auto w2 = [alpha](double y2) { return std::pow(1.0 + y2 * y2, alpha); };
  const double lhs2 = inner_grid(fluct, fluct, w2);
  const double d1n2 = inner_grid(d1, d1, w2);
  const double d2n2 = inner_grid(d2, d2, w2);
  return {std::sqrt(std::max(0.0, lhs2)), std::sqrt(std::max(0.0, d1n2 + d2n2)),
          std::sqrt(std::max(0.0, d1n2))};
}

enum class DecayModel { exp, poly };

struct FitResult {
  double rate = 0.0;
  double r2 = 0.0;
  double intercept = 0.0;
  int points = 0;
};

namespace detail {
inline FitResult fit_line(const std::vector<double>& xs, const std::vector<double>& ys) {
  const int n = static_cast<int>(xs.size());
  if (n < 2) throw std::invalid_argument("fit_line: need at least two points");
  double sx = 0, sy = 0;
  for (int i = 0; i < n; ++i) {
    sx += xs[static_cast<size_t>(i)];
    sy += ys[static_cast<size_t>(i)];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0, syy = 0;
  for (int i = 0; i < n; ++i) {
    const double dx = xs[static_cast<size_t>(i)] - mx, dy = ys[static_cast<size_t>(i)] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx == 0.0) throw std::invalid_argument("fit_line: degenerate abscissae");
  const double slope = sxy / sxx;
  const double r2 = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  return {slope, r2, my - slope * mx, n};
}
}  // namespace detail

/// Least-squares decay rate of the per-height slice norms
/// s(y2) = |u(., y2)|_{L^2(0,1)} over a < |y2| < b: ln s against |y2|
/// (exp model) or against ln rho(y2) (poly model).
inline FitResult decay_fit(const StripField& u, DecayModel model, double a, double b) {
  const StripGrid& g = u.grid;
  std::vector<double> xs, ys;
  for (int j = 0; j < g.n2; ++j) {
    const double y = g.y2(j);
    if (std::abs(y) <= a || std::abs(y) >= b) continue;
    double row = 0.0;
    for (int i = 0; i < g.n1; ++i) row += u.at(i, j) * u.at(i, j);
    const double s = std::sqrt(row / g.n1);
    if (s <= 0.0) throw std::invalid_argument("decay_fit: zero slice norm inside the window");
    xs.push_back(model == DecayModel::exp ? std::abs(y) : 0.5 * std::log1p(y * y));
    ys.push_back(std::log(s));
  }
  return detail::fit_line(xs, ys);
}

enum class TailSide { plus, minus, both };

/// Linear far-field fit of the horizontal average ubar(y2) against |y2|
/// over a < |y2| < b. Captures linear growth (slope) and plateaus
/// (intercept) of the mean mode.
inline FitResult linear_tail_fit(const StripField& u, double a, double b,
                                 TailSide side = TailSide::both) {
  const StripGrid& g = u.grid;
  const auto ubar = horizontal_average(u);
  std::vector<double> xs, ys;
  for (int j = 0; j < g.n2; ++j) {
    const double y = g.y2(j);
    if (std::abs(y) <= a || std::abs(y) >= b) continue;
    if (side == TailSide::plus && y < 0) continue;
    if (side == TailSide::minus && y > 0) continue;
    xs.push_back(std::abs(y));
    ys.push_back(ubar[static_cast<size_t>(j)]);
  }
  return detail::fit_line(xs, ys);
}

}  // namespace strip
