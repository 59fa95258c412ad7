#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "strip_poisson/derivatives.hpp"
#include "strip_poisson/grid.hpp"
#include "strip_poisson/verify.hpp"
#include "strip_poisson/weight_spaces.hpp"

using namespace strip;

TEST_CASE("compute_q closed form") {
  CHECK(compute_q(0, -2.0) == 1);
  CHECK(compute_q(2, 0.0) == 1);
  CHECK(compute_q(0, -0.5) == -1);  // half-integer branch: empty space
  CHECK(compute_q(1, -0.5) == 0);
  CHECK(compute_q(0, -1.5) == 0);
  CHECK(compute_q(2, 0.5) == 1);   // critical endpoint keeps y2 via the log norm
  CHECK(compute_q(1, 0.5) == 0);
  CHECK(compute_q(0, 0.5) == -1);
  CHECK(compute_q(0, 1.5) < 0);    // both branches agree the space is empty
  // robust to arithmetic noise around the half-integer branch points
  CHECK(compute_q(0, -0.5 + 1e-12) == compute_q(0, -0.5));
}

TEST_CASE("compute_k critical set") {
  CHECK(compute_k(2, 0.5) == 1);
  CHECK(compute_k(1, 0.0) == -1);
  CHECK(compute_k(3, 2.5) == 0);
  CHECK(compute_k(0, 0.5) == -1);   // m = 0 has an empty critical set
  CHECK(compute_k(2, 1.5) == 0);
  CHECK(compute_k(2, 2.5) == -1);   // above m - 1/2
  CHECK(compute_k(2, -0.5) == -1);  // negative half-integers are not critical
}

TEST_CASE("WeightSpec flags") {
  const WeightSpec critical(2, 0.5);
  CHECK(critical.is_critical);
  CHECK(critical.k_crit == 1);
  CHECK(critical.q_poly == 1);
  CHECK_FALSE(critical.is_half_integer_critical);

  const WeightSpec half(1, -1.5);
  CHECK_FALSE(half.is_critical);
  CHECK(half.k_crit == -1);
  CHECK(half.is_half_integer_critical);
  CHECK(half.q_poly == 1);
}

TEST_CASE("poly_basis spans and conventions") {
  const auto harmonic = poly_basis(1, true);
  REQUIRE(harmonic.size() == 2);
  CHECK(harmonic[0].eval(3.0) == 1.0);
  CHECK(harmonic[1].eval(3.0) == 3.0);
  CHECK(harmonic[1].is_harmonic());

  CHECK(poly_basis(-1, false).empty());
  CHECK(poly_basis(-1, true).empty());

  const auto full = poly_basis(3, false);
  REQUIRE(full.size() == 4);
  CHECK(full[3].degree() == 3);
  CHECK_FALSE(full[2].is_harmonic());

  // harmonic truncation at degree 1 regardless of j
  CHECK(poly_basis(3, true).size() == 2);
}

TEST_CASE("PolyElement laplacian") {
  const PolyElement p{{1.0, 2.0, 3.0, 4.0}};  // 1 + 2y + 3y^2 + 4y^3
  const PolyElement lap = p.laplacian();
  REQUIRE(lap.coeffs.size() == 2);
  CHECK(lap.coeffs[0] == doctest::Approx(6.0));
  CHECK(lap.coeffs[1] == doctest::Approx(24.0));
  CHECK(PolyElement{{5.0, -2.0}}.laplacian().degree() == -1);
}

TEST_CASE("WeightFunction evaluation") {
  WeightFunction w;
  w.alpha = -2.0;
  CHECK(w(0.0) == doctest::Approx(1.0));
  CHECK(w(2.0) == doctest::Approx(1.0 / 5.0));
  CHECK(w(-2.0) == doctest::Approx(w(2.0)));  // even
  w.log_power = -1;
  CHECK(w(1.0) == doctest::Approx(0.5 / std::log(3.0)));
  CHECK(w(1.0) > 0.0);
}

TEST_CASE("membership oracle reproduces the index calculus" * doctest::timeout(300)) {
  // Full grid of the module invariant: alpha in {-3,-5/2,...,3}, m in
  // {0,1,2}, q' in {0..4}; boundedness of |y2^q'| iff q' <= q(m, alpha).
  for (int twice_alpha = -6; twice_alpha <= 6; ++twice_alpha) {
    const double alpha = 0.5 * twice_alpha;
    for (int m = 0; m <= 2; ++m) {
      const int q = compute_q(m, alpha);
      for (int qp = 0; qp <= 4; ++qp) {
        INFO("m=", m, " alpha=", alpha, " q'=", qp, " q=", q);
        CHECK(membership_oracle(m, alpha, qp) == (qp <= q));
      }
    }
  }
}

TEST_CASE("critical log weight breaks the inclusion chain") {
  // u = 1 lies in the log-weighted H^1_{1/2} but not in L^2_{-1/2}.
  CHECK(membership_oracle(1, 0.5, 0));
  CHECK_FALSE(membership_oracle(0, -0.5, 0));
}

TEST_CASE("harmonic basis is discretely harmonic") {
  const StripGrid g(8, 6.0, 129);
  for (const auto& p : poly_basis(1, true)) {
    const StripField field = make_field(
        g, [&p](double, double y2) { return p.eval(y2); }, DecayClass::poly(p.degree()));
    const StripField lap = laplacian(field);
    double worst = 0.0;
    for (int i = 0; i < g.n1; ++i)
      for (int j = 2; j < g.n2 - 2; ++j) worst = std::max(worst, std::abs(lap.at(i, j)));
    CHECK(worst <= 1e-10);
  }
  // y2^2 is differentiated exactly: discrete Laplacian = 2 at interior nodes
  const StripField quad = make_field(g, [](double, double y2) { return y2 * y2; },
                                     DecayClass::poly(2.0));
  const StripField lap = laplacian(quad);
  for (int j = 2; j < g.n2 - 2; ++j) CHECK(lap.at(3, j) == doctest::Approx(2.0).epsilon(1e-12));
}
