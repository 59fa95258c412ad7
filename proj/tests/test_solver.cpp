#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "strip_poisson/diagnostics.hpp"
#include "strip_poisson/green.hpp"
#include "strip_poisson/presets.hpp"
#include "strip_poisson/solver.hpp"

using namespace strip;
namespace {
constexpr double pi = std::numbers::pi;
}

TEST_CASE("manufactured solution, per-mode route") {
  const StripGrid g(32, 8.0, 1025);
  const StripField f = sample("manufactured_rhs", g);
  const StripField uref = sample("gaussian_mode1", g);
  const SolveReport rep = solve_per_mode(f, MomentPolicy::require_orthogonal);
  CHECK(quotient_l2_distance(rep.u, uref, 0) <= 1e-6);
  CHECK(std::abs(rep.moment_mass) <= rep.tol_moment);
  CHECK(std::abs(rep.moment_dipole) <= rep.tol_moment);
  CHECK(rep.u.decay.is_schwartz());
  // anchored class member: zero horizontal mean on the y2 = 0 line
  const auto ubar = horizontal_average(rep.u);
  CHECK(std::abs(ubar[static_cast<size_t>(g.center())]) <= 1e-14);
}

TEST_CASE("zero source yields the zero solution") {
  const StripGrid g(16, 6.0, 257);
  const SolveReport rep = solve_per_mode(sample("zero", g), MomentPolicy::require_orthogonal);
  CHECK(rep.u.max_abs() == 0.0);
  CHECK(rep.representative.eval(1.0) == 0.0);
}

TEST_CASE("mean-mode solve against the Hermite pair") {
  // f = (2 - 4 y2^2) e^{-y2^2} = -(e^{-y2^2})'' has both moments zero;
  // the solution is e^{-y2^2} modulo span{1, y2}.
  const StripGrid g(16, 8.0, 1025);
  const StripField f = sample("hermite_mean", g);
  const StripField uref = make_field(g, [](double, double y2) { return std::exp(-y2 * y2); });
  const SolveReport rep = solve_per_mode(f, MomentPolicy::require_orthogonal);
  CHECK(quotient_l2_distance(rep.u, uref, 1) <= 1e-6);
}

TEST_CASE("moment policies") {
  const StripGrid g(16, 8.0, 513);
  const StripField f = sample("unit_mass", g);  // <f,1> = 1

  CHECK_THROWS_AS(solve_per_mode(f, MomentPolicy::require_orthogonal), moment_violation);

  const SolveReport proj = solve_per_mode(f, MomentPolicy::project);
  CHECK(proj.projection_mass == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(std::abs(proj.projection_dipole) <= 1e-10);
  // projected source decays: no linear tail left
  CHECK(std::abs(proj.tail_slope_plus) <= 1e-9);
  CHECK(std::abs(proj.tail_slope_minus) <= 1e-9);

  const SolveReport grow = solve_per_mode(f, MomentPolicy::allow_growth);
  CHECK(grow.tail_slope_plus == doctest::Approx(-0.5).epsilon(1e-6));
  CHECK(grow.tail_slope_minus == doctest::Approx(-0.5).epsilon(1e-6));
  CHECK(grow.u.decay.kind == DecayKind::poly_plus_linear);
}

TEST_CASE("growth dichotomy of the mean mode") {
  const StripGrid g(16, 8.0, 1025);
  {
    // <f,1> = 0 != <f,y2>: plateaus of opposite sign, step = <f, y2>
    const SolveReport rep = solve_per_mode(sample("unit_dipole", g), MomentPolicy::allow_growth);
    const auto up = linear_tail_fit(rep.u, 4.0, 7.0, TailSide::plus);
    const auto dn = linear_tail_fit(rep.u, 4.0, 7.0, TailSide::minus);
    CHECK(std::abs(up.rate) <= 1e-3);
    CHECK(std::abs(dn.rate) <= 1e-3);
    CHECK(up.intercept - dn.intercept == doctest::Approx(rep.moment_dipole).epsilon(1e-4));
  }
  {
    // both moments zero: decaying representative exists
    const SolveReport rep = solve_per_mode(sample("hermite3_mean", g), MomentPolicy::allow_growth);
    CHECK(std::abs(rep.tail_slope_plus) <= 1e-9);
    CHECK(std::abs(rep.tail_const_plus) <= 1e-6);
  }
}

TEST_CASE("discrete residual of both solve routes") {
  const StripGrid g(16, 6.0, 385);
  for (const char* name : {"gaussian_mode1", "hermite_mean", "manufactured_rhs"}) {
    const StripField f = sample(name, g);
    const SolveReport pm = solve_per_mode(f, MomentPolicy::require_orthogonal);
    StripField resid = laplacian(pm.u);
    resid *= -1.0;
    resid -= f;
    INFO("per-mode residual for ", name);
    CHECK(norm_grid(resid) / norm_grid(f) <= 1e-4);

    const SolveReport gq = solve_green_quadrature(f);
    StripField resid2 = laplacian(gq.u);
    resid2 *= -1.0;
    resid2 -= f;
    INFO("green-quadrature residual for ", name);
    CHECK(norm_grid(resid2) / norm_grid(f) <= 1e-4);
  }
}

TEST_CASE("green quadrature of the zero source") {
  const StripGrid g(16, 6.0, 385);
  const SolveReport rep = solve_green_quadrature(sample("zero", g));
  CHECK(rep.u.max_abs() == 0.0);
}

TEST_CASE("green quadrature guards") {
  const StripGrid big(64, 8.0, 1025);
  CHECK_THROWS_AS(solve_green_quadrature(sample("gaussian_mode1", big)), cost_budget_error);

  const StripGrid g(16, 6.0, 385);
  CHECK_THROWS_AS(solve_green_quadrature(sample("unit_mass", g)), moment_violation);

  StripField growing = sample("gaussian_mode1", g);
  growing.decay = DecayClass::poly_plus_linear();
  CHECK_THROWS_AS(solve_green_quadrature(growing), support_error);
}

TEST_CASE("point source far field matches the Green function") {
  // compactly supported bump at (0.5, 0): beyond the source the G2-form
  // member behaves like G(x - x0) * mass.
  const StripGrid g(32, 6.0, 769);
  const StripField f = sample("bump", g, {{"y1_0", 0.5}, {"y2_0", 0.0}, {"r0", 0.15}});
  const SolveReport rep = solve_per_mode(f, MomentPolicy::allow_growth);
  const double mass = rep.moment_mass;
  REQUIRE(mass > 0.0);
  const int jq = g.node_at(4.0);
  const int iq = g.n1 / 4;
  const double u_g2form = rep.u.at(iq, jq) + rep.representative.eval(g.y2(jq));
  const double expected = green_closed(0.25 - 0.5, 4.0).value * mass;
  CHECK(u_g2form == doctest::Approx(expected).epsilon(0.01));
}

TEST_CASE("horizontal dipole pair decays at the first-mode rate") {
  const StripGrid g(32, 4.0, 513);
  const StripField f = sample("bump_hpair", g);
  const SolveReport rep = solve_green_quadrature(f);
  const auto fit = decay_fit(rep.u, DecayModel::exp, 0.8, 1.6);
  CHECK(std::abs(fit.rate + 2.0 * pi) <= 0.05 * 2.0 * pi);
}

TEST_CASE("method equivalence modulo the harmonic span") {
  const StripGrid g(16, 6.0, 385);
  const StripField f = sample("sin_mode1_odd", g);
  const SolveReport pm = solve_per_mode(f, MomentPolicy::require_orthogonal);
  const SolveReport gq = solve_green_quadrature(f);
  CHECK(quotient_l2_distance(pm.u, gq.u, 1) <= 1e-5);
}

TEST_CASE("source refinement: exact horizontally, 4th order vertically") {
  const StripGrid g(16, 4.0, 65);
  const Preset p = make_preset("mode12_mix");
  const StripField f = make_field(g, p.fn, p.decay);
  const StripField fr = detail::refine_sources(f, 8, 2);
  double worst_nodes = 0.0, worst_mid = 0.0;
  for (int i = 0; i < fr.grid.n1; ++i)
    for (int j = 0; j < fr.grid.n2; ++j) {
      const double err = std::abs(fr.at(i, j) - p.fn(fr.grid.y1(i), fr.grid.y2(j)));
      (j % 2 == 0 ? worst_nodes : worst_mid) = std::max(j % 2 == 0 ? worst_nodes : worst_mid, err);
    }
  CHECK(worst_nodes <= 1e-13);  // zero-padded FFT is exact for resolved modes
  CHECK(worst_mid <= 1e-3);     // cubic midpoints at h2 = 0.125
}

TEST_CASE("norm ratio is reported for decaying solves") {
  const StripGrid g(32, 8.0, 513);
  const SolveReport rep = solve_per_mode(sample("gaussian_mode1", g), MomentPolicy::require_orthogonal);
  CHECK(std::isfinite(rep.norm_ratio));
  CHECK(rep.norm_ratio > 0.0);
  CHECK(rep.norm_u == doctest::Approx(rep.norm_ratio * rep.norm_f));
}
