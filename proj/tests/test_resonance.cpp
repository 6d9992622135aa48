#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "mirrad/emission.hpp"
#include "mirrad/resonance.hpp"
#include "mirrad/units.hpp"
#include "test_util.hpp"

using namespace mirrad;
using testutil::rel_diff;

TEST_CASE("delta_s_analytic: headline value at 78 degrees, k dq0 = 0.03") {
  const double ds = delta_s_analytic(deg_to_rad(78.0), 0.03);
  CHECK(std::fabs(ds - 7.187e-6) / 7.187e-6 < 1e-3);
  CHECK(rel_diff(ds, 7.1870985450110993e-6) < 1e-13);
}

TEST_CASE("delta_s_analytic: vanishes toward normal incidence") {
  CHECK(delta_s_analytic(deg_to_rad(1e-4), 0.03) < 1e-17);
  CHECK(delta_s_analytic(0.0, 0.03) == 0.0);
}

TEST_CASE("delta_s_analytic: quartic amplitude scaling") {
  const double base = delta_s_analytic(deg_to_rad(63.0), 0.02);
  CHECK(rel_diff(delta_s_analytic(deg_to_rad(63.0), 0.04), 16.0 * base) < 1e-14);
  CHECK(rel_diff(delta_s_analytic(deg_to_rad(63.0), 0.06), 81.0 * base) < 1e-13);
}

TEST_CASE("delta_s_analytic: domain errors") {
  CHECK_THROWS_AS(delta_s_analytic(deg_to_rad(90.0), 0.03), std::domain_error);
  CHECK_THROWS_AS(delta_s_analytic(deg_to_rad(95.0), 0.03), std::domain_error);
  CHECK_THROWS_AS(delta_s_analytic(-0.1, 0.03), std::domain_error);
  CHECK_THROWS_AS(delta_s_analytic(deg_to_rad(45.0), 0.0), std::invalid_argument);
}

TEST_CASE("delta_s_analytic: strictly increasing in angle") {
  double prev = 0.0;
  for (int deg = 1; deg <= 89; ++deg) {
    const double ds = delta_s_analytic(deg_to_rad(deg), 0.03);
    CHECK(ds > prev);
    prev = ds;
  }
  CHECK(delta_s_analytic(deg_to_rad(89.0), 0.03) >
        1e3 * delta_s_analytic(deg_to_rad(1.0), 0.03));
}

TEST_CASE("delta_s_numeric: peak below the analytic estimate at 78 degrees") {
  const auto r = delta_s_numeric(deg_to_rad(78.0), 0.03, 3);
  REQUIRE(r.delta_s_numeric.has_value());
  const double num = *r.delta_s_numeric;
  CHECK(num < r.delta_s_analytic);
  CHECK((r.delta_s_analytic - num) / r.delta_s_analytic < 0.5);
  // mpmath locates the M=3 peak at 7.16641448786e-6.
  CHECK(rel_diff(num, 7.16641448786e-6) < 1e-5);
  CHECK(r.bracket_lo <= num);
  CHECK(num <= r.bracket_hi);
  CHECK(r.bracket_hi - r.bracket_lo <= 1e-3 * num);
  CHECK(r.iterations > 0);

  // Peak correspondence: the located point beats both bracket ends.
  auto rho_at = [](double delta) {
    return rate_direct({deg_to_rad(78.0), 0.03, delta, Method::truncated(3)}).rho;
  };
  CHECK(rho_at(num) > rho_at(r.bracket_lo * (1.0 - 1e-4)));
  CHECK(rho_at(num) > rho_at(r.bracket_hi * (1.0 + 1e-4)));
}

TEST_CASE("delta_s_numeric: order 3 and order 6 peaks coincide closely") {
  const auto r3 = delta_s_numeric(deg_to_rad(78.0), 0.03, 3);
  const auto r6 = delta_s_numeric(deg_to_rad(78.0), 0.03, 6);
  CHECK(rel_diff(*r3.delta_s_numeric, *r6.delta_s_numeric) < 1e-3);
}

TEST_CASE("delta_s_numeric: theta = 30 degrees lands near the analytic value") {
  const auto r = delta_s_numeric(deg_to_rad(30.0), 0.03, 3);
  REQUIRE(r.delta_s_numeric.has_value());
  CHECK(*r.delta_s_numeric > 0.0);
  CHECK(*r.delta_s_numeric < 2.0 * r.delta_s_analytic);
  CHECK(*r.delta_s_numeric > 0.5 * r.delta_s_analytic);
}

TEST_CASE("delta_s_numeric: validation and the no-peak regime") {
  CHECK_THROWS_AS(delta_s_numeric(deg_to_rad(78.0), 0.03, 2), std::invalid_argument);
  CHECK_THROWS_AS(delta_s_numeric(0.0, 0.03, 3), std::domain_error);
  CHECK_THROWS_AS(delta_s_numeric(deg_to_rad(91.0), 0.03, 3), std::domain_error);
  // With k*dq0 = 1e-5 the shift estimate drops below the resolution of
  // omega = sin(theta) + delta, every scanned rate collapses onto the same
  // grazing channel and the scan is monotone in the explicit 1/sqrt(delta).
  CHECK_THROWS_AS(delta_s_numeric(deg_to_rad(78.0), 1e-5, 3), NoPeakError);
}

TEST_CASE("frequency shift relation d(omega) = k * delta_s") {
  ResonanceResult r;
  r.delta_s_analytic = 2.5e-6;
  CHECK(r.frequency_shift(2.0) == 5.0e-6);
  r.delta_s_numeric = 2.0e-6;
  CHECK(r.frequency_shift(2.0) == 4.0e-6);
}

TEST_CASE("shift_vs_angle_sweep: monotone angles, headline point, error capture") {
  const auto rows = shift_vs_angle_sweep(
      0.03, {deg_to_rad(10.0), deg_to_rad(45.0), deg_to_rad(78.0)});
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].delta_s_analytic < rows[1].delta_s_analytic);
  CHECK(rows[1].delta_s_analytic < rows[2].delta_s_analytic);
  CHECK(rel_diff(rows[2].delta_s_analytic, 7.1870985450110993e-6) < 1e-13);
  for (const auto& r : rows) CHECK(r.error.empty());

  // A bad angle is reported per point without aborting the sweep.
  const auto mixed =
      shift_vs_angle_sweep(0.03, {deg_to_rad(45.0), deg_to_rad(95.0)});
  REQUIRE(mixed.size() == 2);
  CHECK(mixed[0].error.empty());
  CHECK_FALSE(mixed[1].error.empty());

  const auto numeric =
      shift_vs_angle_sweep(0.03, {deg_to_rad(78.0)}, /*with_numeric=*/true, 3);
  REQUIRE(numeric.size() == 1);
  REQUIRE(numeric[0].delta_s_numeric.has_value());
  CHECK(*numeric[0].delta_s_numeric < numeric[0].delta_s_analytic);
}
