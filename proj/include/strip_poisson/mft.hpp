#pragma once

#include <complex>
#include <stdexcept>
#include <utility>
#include <vector>

#include "strip_poisson/fft.hpp"
#include "strip_poisson/grid.hpp"
#include "strip_poisson/parallel.hpp"
#include "strip_poisson/quadrature.hpp"

namespace strip {

// Horizontal-mode representation of a strip field: for each integer mode
// k in {-n1/2, ..., n1/2 - 1}, the row holds
//
//   F_k(u)(y2) = int_0^1 u(y1, y2) e^{-i 2 pi k y1} dy1
//
// sampled on the vertical grid. Rows are stored in FFT order so that the
// forward/backward passes are plain radix-2 transforms; the 1/n1 factor is
// applied on the forward side, which makes each row the exact integral for
// trigonometric polynomials of degree < n1/2.
struct ModeField {
  StripGrid grid;
  std::vector<std::complex<double>> v;  // row-major, v[r * n2 + j]

  explicit ModeField(const StripGrid& g)
      : grid(g), v(static_cast<size_t>(g.n1) * g.n2, {0.0, 0.0}) {}

  static int index_of(int k, int n1) {
    if (k < -n1 / 2 || k > n1 / 2 - 1)
      throw std::out_of_range("ModeField: mode outside representable band");
    return k >= 0 ? k : k + n1;
  }

  std::complex<double>& at_index(int r, int j) { return v[static_cast<size_t>(r) * grid.n2 + j]; }
  std::complex<double> at_index(int r, int j) const {
    return v[static_cast<size_t>(r) * grid.n2 + j];
  }
  std::complex<double>& at_mode(int k, int j) { return at_index(index_of(k, grid.n1), j); }
  std::complex<double> at_mode(int k, int j) const { return at_index(index_of(k, grid.n1), j); }

  /// Signed mode number of a storage row.
  int mode_of(int r) const { return r < grid.n1 / 2 ? r : r - grid.n1; }
};

inline ModeField horizontal_transform(const StripField& f) {
  const StripGrid& g = f.grid;
  ModeField out(g);
  parallel_for(0, g.n2, [&](int j) {
    std::vector<std::complex<double>> row(static_cast<size_t>(g.n1));
    for (int i = 0; i < g.n1; ++i) row[static_cast<size_t>(i)] = f.at(i, j);
    fft_inplace(row, false);
    for (int r = 0; r < g.n1; ++r) out.at_index(r, j) = row[static_cast<size_t>(r)] / double(g.n1);
  });
  return out;
}

/// Inverse of horizontal_transform. Requires conjugate-symmetric input;
/// rejects it when the reconstructed field keeps an imaginary residue
/// above imag_tol.
inline StripField horizontal_inverse(const ModeField& F, DecayClass decay = DecayClass::schwartz(),
                                     double imag_tol = 1e-8) {
  const StripGrid& g = F.grid;
  StripField out(g, decay);
  std::vector<double> residue(static_cast<size_t>(g.n2), 0.0);
  parallel_for(0, g.n2, [&](int j) {
    std::vector<std::complex<double>> row(static_cast<size_t>(g.n1));
    for (int r = 0; r < g.n1; ++r) row[static_cast<size_t>(r)] = F.at_index(r, j);
    fft_inplace(row, true);
    double res = 0.0;
    for (int i = 0; i < g.n1; ++i) {
      out.at(i, j) = row[static_cast<size_t>(i)].real();
      res = std::max(res, std::abs(row[static_cast<size_t>(i)].imag()));
    }
    residue[static_cast<size_t>(j)] = res;
  });
  double worst = 0.0;
  for (double r : residue) worst = std::max(worst, r);
  const double scale = std::max(1.0, out.max_abs());
  if (worst > imag_tol * scale)
    throw std::invalid_argument("horizontal_inverse: input is not conjugate-symmetric");
  return out;
}

/// Both sides of the per-mode Parseval identity at weight rho^{2 beta}:
/// lhs = |f|^2 in L^2_beta(Z) by strip quadrature, rhs = sum over modes of
/// the per-row weighted L^2 norms. The caller owns the tolerance.
inline std::pair<double, double> parseval_check(const StripField& f, double beta) {
  const StripGrid& g = f.grid;
  const auto wj = simpson_weights(g.n2, g.h2);
  const WeightFunction w{2.0 * beta, 0};

  double lhs = 0.0;
  for (int j = 0; j < g.n2; ++j) {
    double row = 0.0;
    for (int i = 0; i < g.n1; ++i) row += f.at(i, j) * f.at(i, j);
    lhs += wj[static_cast<size_t>(j)] * w(g.y2(j)) * (row / g.n1);
  }

  const ModeField F = horizontal_transform(f);
  double rhs = 0.0;
  for (int r = 0; r < g.n1; ++r) {
    double acc = 0.0;
    for (int j = 0; j < g.n2; ++j)
      acc += wj[static_cast<size_t>(j)] * w(g.y2(j)) * std::norm(F.at_index(r, j));
    rhs += acc;
  }
  return {lhs, rhs};
}

}  // namespace strip
