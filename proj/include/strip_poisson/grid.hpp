#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "strip_poisson/fft.hpp"

namespace strip {

/// Discretization of the periodic strip (0,1) x R: n1 uniform nodes on the
/// periodic direction (node 0 represents y1 = 0 == 1) and an odd number n2
/// of uniform nodes on the truncated vertical interval [-L, L], so that
/// y2 = 0 is always a node.
struct StripGrid {
  int n1;
  double L;
  int n2;
  double h2;

  StripGrid(int n1_, double L_, int n2_) : n1(n1_), L(L_), n2(n2_), h2(0.0) {
    if (n1 < 4 || !is_power_of_two(n1))
      throw std::invalid_argument("StripGrid: n1 must be a power of two >= 4");
    if (!(L > 0.0)) throw std::invalid_argument("StripGrid: L must be positive");
    if (n2 < 9 || n2 % 2 == 0) throw std::invalid_argument("StripGrid: n2 must be odd and >= 9");
    h2 = 2.0 * L / (n2 - 1);
  }

  double h1() const { return 1.0 / n1; }
  double y1(int i) const { return static_cast<double>(i) / n1; }
  double y2(int j) const { return -L + j * h2; }
  int center() const { return (n2 - 1) / 2; }
  long nodes() const { return static_cast<long>(n1) * n2; }

  /// Nearest node index of a vertical height; throws if off-grid.
  int node_at(double y2v, double tol = 1e-9) const {
    const double x = (y2v + L) / h2;
    const int j = static_cast<int>(std::lround(x));
    if (j < 0 || j >= n2 || std::abs(x - j) > tol)
      throw std::invalid_argument("StripGrid: height is not a grid node");
    return j;
  }

  bool operator==(const StripGrid& o) const { return n1 == o.n1 && L == o.L && n2 == o.n2; }
};

enum class DecayKind { schwartz, poly, poly_plus_linear };

/// Declared tail behavior of a field: rapidly decreasing, |f| ~ rho^alpha,
/// or bounded-plus-linear growth. Drives tail estimates; never silently
/// changes computed grid values.
struct DecayClass {
  DecayKind kind = DecayKind::schwartz;
  double alpha = 0.0;  // rho exponent for the poly kind

  static DecayClass schwartz() { return {DecayKind::schwartz, 0.0}; }
  static DecayClass poly(double a) { return {DecayKind::poly, a}; }
  static DecayClass poly_plus_linear() { return {DecayKind::poly_plus_linear, 1.0}; }

  /// rho exponent of an envelope |f| <= C rho^e; schwartz maps to any
  /// exponent, represented here by -infinity-ish sentinel handled upstream.
  bool is_schwartz() const { return kind == DecayKind::schwartz; }
  double envelope_exponent() const {
    return kind == DecayKind::poly_plus_linear ? 1.0 : alpha;
  }
};

/// Real samples on a StripGrid, row-major with the vertical index fastest:
/// value(i1, i2) = v[i1 * n2 + i2].
struct StripField {
  StripGrid grid;
  DecayClass decay;
  std::vector<double> v;

  explicit StripField(const StripGrid& g, DecayClass d = DecayClass::schwartz())
      : grid(g), decay(d), v(static_cast<size_t>(g.n1) * g.n2, 0.0) {}

  double& at(int i, int j) { return v[static_cast<size_t>(i) * grid.n2 + j]; }
  double at(int i, int j) const { return v[static_cast<size_t>(i) * grid.n2 + j]; }

  StripField& operator+=(const StripField& o) {
    for (size_t i = 0; i < v.size(); ++i) v[i] += o.v[i];
    return *this;
  }
  StripField& operator-=(const StripField& o) {
    for (size_t i = 0; i < v.size(); ++i) v[i] -= o.v[i];
    return *this;
  }
  StripField& operator*=(double s) {
    for (double& x : v) x *= s;
    return *this;
  }

  double max_abs() const {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
  }
};

inline StripField make_field(const StripGrid& g, const std::function<double(double, double)>& fn,
                             DecayClass decay = DecayClass::schwartz()) {
  StripField f(g, decay);
  for (int i = 0; i < g.n1; ++i)
    for (int j = 0; j < g.n2; ++j) f.at(i, j) = fn(g.y1(i), g.y2(j));
  return f;
}

}  // namespace strip
