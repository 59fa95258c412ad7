#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "strip_poisson/diagnostics.hpp"
#include "strip_poisson/green.hpp"
#include "strip_poisson/presets.hpp"
#include "strip_poisson/verify.hpp"

using namespace strip;
namespace {
constexpr double pi = std::numbers::pi;

// Adaptive-step 1D Simpson oracle on [0, L] after the substitution
// y = e^s - 1 for the slowly decaying critical integrands.
double critical_norm2_oracle(double L) {
  // integrand: (1 + y^2)^{-1/2} (ln(2 + y^2))^{-2}, integrated over |y| < L
  auto f = [](double y) {
    return std::pow(1.0 + y * y, -0.5) * std::pow(std::log(2.0 + y * y), -2.0);
  };
  const int n = 200001;
  const double S = std::log(1.0 + L);
  const double h = S / (n - 1);
  double acc = 0.0;
  for (int i = 0; i < n; ++i) {
    const double s = i * h;
    const double y = std::exp(s) - 1.0;
    const double w = (i == 0 || i == n - 1) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    acc += w * f(y) * std::exp(s);
  }
  return 2.0 * acc * h / 3.0;  // even integrand
}

}  // namespace

TEST_CASE("weighted norm of the constant against rho^{-1}") {
  const StripGrid g(4, 1000.0, 8001);
  const StripField one = make_field(g, [](double, double) { return 1.0; }, DecayClass::poly(0.0));
  const QuadResult q = weighted_norm(one, WeightSpec(0, -1.0));
  CHECK(q.tail > 0.0);
  CHECK(std::abs(q.value * q.value - pi) <= 2.0 * q.tail + 1e-6);
  CHECK(q.value == doctest::Approx(std::sqrt(pi)).epsilon(1e-3));
}

TEST_CASE("weighted norm of zero") {
  const StripGrid g(8, 10.0, 81);
  CHECK(weighted_norm(StripField(g), WeightSpec(2, 0.5)).value == 0.0);
}

TEST_CASE("critical logarithmic norm is finite and stabilizes") {
  // |1|_{H^1_{1/2}}: only the order-0 term contributes, carrying the
  // (ln(1+rho^2))^{-1} factor. 1D oracle with L in {1e2, 1e4, 1e6}.
  const double I2 = critical_norm2_oracle(1e2);
  const double I4 = critical_norm2_oracle(1e4);
  const double I6 = critical_norm2_oracle(1e6);
  // extrapolate the 1/ln(L) tail: I(L) ~ I_inf - c / ln L
  const double a4 = 1.0 / std::log(1e4), a6 = 1.0 / std::log(1e6);
  const double c = (I6 - I4) / (a4 - a6);
  const double I_inf = I6 + c * a6;
  CHECK(std::abs(I6 - I4) / I6 < 0.02);
  CHECK(std::sqrt(I6) / std::sqrt(I4) < 1.01);  // L-growth stabilization <= 1%
  CHECK(I_inf > I6);
  CHECK(I2 < I4);

  // grid-side value at L = 100 matches the oracle at the same truncation
  const StripGrid g(4, 100.0, 3201);
  const StripField one = make_field(g, [](double, double) { return 1.0; }, DecayClass::poly(0.0));
  const QuadResult q = weighted_norm(one, WeightSpec(1, 0.5));
  CHECK(q.value == doctest::Approx(std::sqrt(I2)).epsilon(1e-3));
}

TEST_CASE("norm monotonicity across the inclusion chain") {
  // For non-critical indices every (m-1, alpha-1) term appears in the
  // (m, alpha) sum with the same weight, so the constant is 1.
  const StripGrid g(16, 8.0, 513);
  for (const auto& name : diagnostic_suite()) {
    const StripField f = sample(name, g);
    for (const auto& [m, alpha] : std::vector<std::pair<int, double>>{{1, 0.0}, {2, 0.0}, {2, -1.0}}) {
      const double big = weighted_norm(f, WeightSpec(m, alpha)).value;
      const double small = weighted_norm(f, WeightSpec(m - 1, alpha - 1.0)).value;
      INFO("preset ", name, " m=", m, " alpha=", alpha);
      CHECK(small <= big * (1.0 + 1e-12));
    }
  }
}

TEST_CASE("quotient norm minimizes over the polynomial span") {
  const StripGrid g(8, 60.0, 1921);
  // u = y2 + e^{-y2^2}: the linear part is removable in L^2_{-1}
  const StripField u = make_field(
      g, [](double, double y2) { return y2 + std::exp(-y2 * y2); }, DecayClass::poly_plus_linear());
  const auto [value, argmin] = quotient_norm(u, WeightSpec(0, -1.0), 1);
  REQUIRE(argmin.coeffs.size() == 2);
  CHECK(argmin.coeffs[1] == doctest::Approx(-1.0).epsilon(1e-6));
  // the least-squares constant is -<1, e^{-y^2}>_w / <1, 1>_w
  CHECK(std::abs(argmin.coeffs[0]) < 0.5);

  const StripField gauss = make_field(g, [](double, double y2) { return std::exp(-y2 * y2); });
  const double gnorm = weighted_norm(gauss, WeightSpec(0, -1.0)).value;
  CHECK(value <= gnorm * (1.0 + 1e-9));

  // exact representability: an element of the span collapses to ~0
  // (the plain norm of a polynomial diverges, so scale on the grid)
  const StripField poly = make_field(
      g, [](double, double y2) { return 2.0 - 0.5 * y2; }, DecayClass::poly_plus_linear());
  const auto rep = quotient_norm(poly, WeightSpec(0, -1.0), 1);
  CHECK(rep.value <= 1e-8 * weighted_norm_grid(poly, WeightSpec(0, -1.0)));

  // j = -1: no minimization at all (on a field with a finite norm)
  const auto none = quotient_norm(gauss, WeightSpec(0, -1.0), -1);
  CHECK(none.value == doctest::Approx(gnorm));
  CHECK(none.argmin.degree() == -1);
}

TEST_CASE("quotient argmin is invariant under span shifts") {
  const StripGrid g(8, 40.0, 1281);
  const StripField u = make_field(
      g, [](double, double y2) { return std::exp(-0.5 * y2 * y2) * (1.0 + 0.3 * y2); });
  const WeightSpec spec(0, -1.0);
  const auto base = quotient_norm(u, spec, 1);
  StripField shifted = u;
  for (int i = 0; i < g.n1; ++i)
    for (int j = 0; j < g.n2; ++j) shifted.at(i, j) += 3.0 - 2.0 * g.y2(j);
  shifted.decay = DecayClass::poly_plus_linear();
  const auto moved = quotient_norm(shifted, spec, 1);
  CHECK(moved.value == doctest::Approx(base.value).epsilon(1e-8));
  CHECK(moved.argmin.coeffs[0] == doctest::Approx(base.argmin.coeffs[0] - 3.0).epsilon(1e-7));
  CHECK(moved.argmin.coeffs[1] == doctest::Approx(base.argmin.coeffs[1] + 2.0).epsilon(1e-7));
}

TEST_CASE("quotient equivalence with the top seminorm") {
  // presets of the form p + decaying, p in P'_1: the quotient norm is
  // within a stable constant of the H^1 seminorm (Poincare estimate).
  const StripGrid g(16, 30.0, 1921);
  const WeightSpec spec(1, -1.5);  // q(1, -3/2) = 1
  REQUIRE(spec.q_poly == 1);
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  double rmin = 1e300, rmax = 0.0;
  for (int t = 0; t < 8; ++t) {
    const double a = unif(rng), b = unif(rng), c = 1.0 + 0.5 * unif(rng);
    const StripField u = make_field(
        g,
        [&](double y1, double y2) {
          return a + b * y2 + c * std::exp(-0.3 * y2 * y2) * (1.0 + 0.2 * std::cos(2 * pi * y1));
        },
        DecayClass::poly_plus_linear());
    const double qn = quotient_norm(u, spec, 1).value;
    // H^1 seminorm with the weight of the top order
    const StripField d1 = differentiate(u, Direction::y1, 1);
    const StripField d2 = differentiate(u, Direction::y2, 1);
    auto w2 = [&spec](double y2) { return std::pow(1.0 + y2 * y2, spec.alpha); };
    const double semi = std::sqrt(inner_grid(d1, d1, w2) + inner_grid(d2, d2, w2));
    const double ratio = qn / semi;
    rmin = std::min(rmin, ratio);
    rmax = std::max(rmax, ratio);
  }
  CHECK(rmax / rmin <= 30.0);
}

TEST_CASE("x-space norm assembly") {
  const StripGrid g(16, 8.0, 513);
  const StripField u = make_field(g, [](double, double y2) { return std::exp(-y2 * y2); });

  // direct assembly identity at (m, alpha, p) = (0, 1/2, 1)
  const QuadResult x = x_space_norm(u, 0, 0.5, 1);
  StripField y2u = u;
  for (int i = 0; i < g.n1; ++i)
    for (int j = 0; j < g.n2; ++j) y2u.at(i, j) *= g.y2(j);
  const double t0 = weighted_norm(u, WeightSpec(0, 0.5)).value;
  const double t1 = weighted_norm(y2u, WeightSpec(1, 0.5)).value;
  const double tloc = local_sobolev_norm(u, 1);
  CHECK(x.value == doctest::Approx(std::sqrt(t0 * t0 + t1 * t1 + tloc * tloc)).epsilon(1e-12));
  CHECK(x.value > 0.0);

  CHECK(x_space_norm(StripField(g), 0, 0.5, 1).value == 0.0);

  // p = 0: the X and H norms coincide exactly
  const QuadResult x0 = x_space_norm(u, 0, 0.5, 0);
  CHECK(x0.value == weighted_norm(u, WeightSpec(0, 0.5)).value);

  CHECK_THROWS_AS(x_space_norm(u, 0, 0.3, 1), std::invalid_argument);
  CHECK_THROWS_AS(x_space_norm(u, 2, 0.5, 1), std::invalid_argument);
}

TEST_CASE("hardy checker against the pure exponential oracle") {
  // f = e^{-r} on [1, inf): lhs = e^{-2}/2, rhs = 4 * 1.25 e^{-2}
  const int n = 4097;
  const double R = 1.0, W = 30.0, h = W / (n - 1);
  RadialTable tb;
  tb.r0 = R;
  tb.h = h;
  tb.v.resize(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) tb.v[static_cast<size_t>(i)] = std::exp(-(R + i * h));
  const HardyResult res = hardy_check(tb, 0.0, R, /*subtract_boundary=*/true);
  // the subtracted constant e^{-1} changes lhs; rebuild: oracle applies to
  // the raw tail integrals instead
  CHECK(res.constant_used == doctest::Approx(4.0));

  // raw integrals against the analytic values (quadrature oracle)
  double lhs = 0.0, rhs = 0.0;
  const auto w = simpson_weights(n, h);
  for (int i = 0; i < n; ++i) {
    const double r = R + i * h;
    lhs += w[static_cast<size_t>(i)] * std::exp(-2.0 * r);
    rhs += w[static_cast<size_t>(i)] * std::exp(-2.0 * r) * r * r;
  }
  CHECK(lhs == doctest::Approx(std::exp(-2.0) / 2.0).epsilon(1e-9));
  CHECK(4.0 * rhs == doctest::Approx(5.0 * std::exp(-2.0)).epsilon(1e-9));
  CHECK(lhs <= 4.0 * rhs);
}

TEST_CASE("hardy checker edge cases") {
  const int n = 513;
  RadialTable zero;
  zero.r0 = 2.0;
  zero.h = 0.01;
  zero.v.assign(static_cast<size_t>(n), 0.0);
  const HardyResult rz = hardy_check(zero, 0.0, 2.0);
  CHECK(rz.lhs == 0.0);
  CHECK(rz.rhs == 0.0);

  RadialTable bad = zero;
  bad.v[0] = 1.0;
  for (int i = 1; i < n; ++i) bad.v[static_cast<size_t>(i)] = 1.0 / (1.0 + i);
  CHECK_THROWS_AS(hardy_check(bad, 0.0, 2.0), std::invalid_argument);

  // beta = -1 routes to the log branch with constant (4/3)^2
  RadialTable smooth;
  smooth.r0 = 2.0;
  smooth.h = 6.0 / (n - 1);
  smooth.v.resize(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / (n - 1);
    smooth.v[static_cast<size_t>(i)] = 16.0 * t * t * (1.0 - t) * (1.0 - t);
  }
  const HardyResult rl = hardy_check(smooth, -1.0, 2.0);
  CHECK(rl.log_branch);
  CHECK(rl.constant_used == doctest::Approx(16.0 / 9.0));
  CHECK(rl.lhs <= rl.rhs);

  // the log branch needs ln r > 0 on the domain
  RadialTable inner = smooth;
  inner.r0 = 0.5;
  CHECK_THROWS_AS(hardy_check(inner, -1.0, 0.5), std::invalid_argument);
}

TEST_CASE("poincare-wirtinger checker") {
  const StripGrid g(32, 6.0, 257);
  {
    const StripField u = sample("gaussian_mode1", g);
    const PoincareResult r = poincare_wirtinger_check(u, 0.0);
    // ubar = 0, so lhs = |u|; the first mode contributes slack 2 pi
    CHECK(r.rhs_d1 == doctest::Approx(2.0 * pi * r.lhs).epsilon(1e-10));
    CHECK(r.lhs <= r.rhs_d1);
    CHECK(r.rhs >= r.rhs_d1);
  }
  {
    const StripField u = make_field(g, [](double, double y2) { return std::exp(-y2 * y2); });
    const PoincareResult r = poincare_wirtinger_check(u, 1.0);
    CHECK(r.lhs <= 1e-14);  // u equals its horizontal average
  }
}

TEST_CASE("decay fit on exact models") {
  const StripGrid g(16, 8.0, 513);
  {
    const StripField u = make_field(g, [](double y1, double y2) {
      return std::exp(-2.0 * pi * std::abs(y2)) * std::cos(2.0 * pi * y1);
    });
    const auto fit = decay_fit(u, DecayModel::exp, 2.0, 6.0);
    CHECK(std::abs(fit.rate + 2.0 * pi) <= 1e-6);
    CHECK(fit.r2 > 1.0 - 1e-12);
  }
  {
    const StripField u = make_field(
        g, [](double, double y2) { return std::pow(1.0 + y2 * y2, -1.5); }, DecayClass::poly(-3.0));
    const auto fit = decay_fit(u, DecayModel::poly, 2.0, 7.0);
    CHECK(std::abs(fit.rate + 3.0) <= 0.03);
  }
  CHECK_THROWS_AS(decay_fit(StripField(g), DecayModel::exp, 2.0, 6.0), std::invalid_argument);
}

TEST_CASE("decay fit on the sampled localized Green part") {
  const StripGrid g(16, 8.0, 513);
  StripField u(g);
  for (int i = 0; i < g.n1; ++i)
    for (int j = 0; j < g.n2; ++j) {
      if (i == 0 && j == g.center()) continue;  // mask the singular node
      u.at(i, j) = green_localized(g.y1(i), g.y2(j));
    }
  const auto fit = decay_fit(u, DecayModel::exp, 2.0, 6.0);
  CHECK(std::abs(fit.rate + 2.0 * pi) <= 0.01 * 2.0 * pi);
}

TEST_CASE("gram conditioning guard trips on a degenerate weighted basis") {
  // high-degree monomials under a rapidly decaying weight are nearly
  // dependent: the effective domain shrinks to |y2| < ~0.15
  const StripGrid g(8, 10.0, 641);
  const StripField u = make_field(g, [](double, double y2) { return std::exp(-8.0 * y2 * y2); });
  CHECK_THROWS_AS(quotient_norm(u, WeightSpec(0, -100.0), 7), conditioning_error);
}
