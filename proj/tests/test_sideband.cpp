#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <complex>

#include "doctest.h"
#include "mirrad/sideband.hpp"
#include "mirrad/units.hpp"
#include "test_util.hpp"

using namespace mirrad;
using testutil::rel_diff;

namespace {

// Scenario used throughout: theta = 78 deg, k*dq0 = 0.03, delta = 1e-3, k = 1.
SidebandSystem reference_system(int order = 3) {
  const double s = std::sin(deg_to_rad(78.0));
  const double omega = s + 1e-3;
  return build_system(omega, ChannelParams{s, 1.0 + omega}, 0.03, order);
}

}  // namespace

TEST_CASE("build_system: static mirror zeroes coupling and drive") {
  const ChannelParams p{0.4, 1.25};
  const auto sys = build_system(0.9, p, 0.0, 3);
  for (const auto& o : sys.offdiag) CHECK(o == std::complex<double>{0.0, 0.0});
  for (const auto& y : sys.rhs) CHECK(y == std::complex<double>{0.0, 0.0});
  for (int m = -3; m <= 3; ++m) {
    const auto expect = std::complex<double>{0.0, 1.0} *
                        kx_branch(sys.sideband_frequency(m), p).value;
    CHECK(sys.diag[m + 3] == expect);
  }
}

TEST_CASE("build_system: input validation") {
  const ChannelParams p{0.4, 1.3};
  CHECK_THROWS_AS(build_system(0.9, p, 0.03, 0), std::invalid_argument);
  CHECK_THROWS_AS(build_system(0.9, p, -0.1, 3), std::invalid_argument);
  // omega0 * dq0 = 0.39 violates the nonrelativistic guard.
  CHECK_THROWS_AS(build_system(0.9, p, 0.3, 3), std::invalid_argument);
  CHECK_NOTHROW(build_system(0.9, p, 0.2, 3));
  CHECK(drive_strength_marginal(p, 0.2));
  CHECK_FALSE(drive_strength_marginal(p, 0.01));
}

TEST_CASE("build_system: central diagonal obeys K^2 = delta(delta + 2 sin t)") {
  const double s = std::sin(deg_to_rad(78.0));
  for (double delta : {1e-6, 1e-3, 0.1}) {
    const double omega = s + delta;
    const auto sys = build_system(omega, {s, 1.0 + omega}, 0.03, 3);
    const double expect = std::sqrt(delta * (delta + 2.0 * s));
    // omega = s + delta only retains delta to the ulp of s, so the comparison
    // tolerance carries an eps/delta term.
    CHECK(rel_diff(sys.diag[3].imag(), expect) < 1e-12 + 6e-17 / delta);
    CHECK(sys.diag[3].real() == 0.0);
  }
}

TEST_CASE("build_system: entries match an independent high-precision transcription") {
  // Reference entries computed with mpmath (40 digits) from the definitions
  // diag_m = i K(omega - m*omega0), off_m = (dq0/2) H(omega - m*omega0).
  const auto sys = reference_system();
  const double diag_imag[7] = {
      6.8470760236143372,   4.8395835250762312,   2.7919057595493789,
      0.044241329110545620, -0.20791169081775934, -2.8139914175662814,
      -4.8608557452443947};
  const double off[6] = {-0.49790245157889918,   -0.20474460930677921,
                         -0.029097523799370620,  0.029038804943326591,
                         -0.030335623078687578,  -0.20722080786541313};
  for (int i = 0; i < 7; ++i) {
    CHECK(sys.diag[i].real() == 0.0);
    CHECK(rel_diff(sys.diag[i].imag(), diag_imag[i]) < 1e-12);
  }
  for (int i = 0; i < 6; ++i) {
    CHECK(sys.offdiag[i].imag() == 0.0);
    CHECK(rel_diff(sys.offdiag[i].real(), off[i]) < 1e-12);
  }
  for (int i = 0; i < 7; ++i) {
    if (i == 2 || i == 4) continue;
    CHECK(sys.rhs[i] == std::complex<double>{0.0, 0.0});
  }
  CHECK(rel_diff(sys.rhs[4].real(), -0.029038804943326591) < 1e-12);
  CHECK(rel_diff(sys.rhs[2].real(), 0.029097523799370620) < 1e-12);
  // The drive entries are the negated couplings next to the m = 0 row.
  CHECK(sys.rhs[4] == -sys.offdiag[3]);
  CHECK(sys.rhs[2] == -sys.offdiag[2]);
}

TEST_CASE("solve_tridiagonal: static mirror gives the zero solution") {
  const auto sol = solve_tridiagonal(build_system(0.9, {0.4, 1.25}, 0.0, 3));
  for (int m = -3; m <= 3; ++m) CHECK(sol.at(m) == std::complex<double>{0.0, 0.0});
  CHECK(sol.residual == 0.0);
  CHECK_FALSE(sol.condition_flag);
}

TEST_CASE("closed form matches an independent high-precision evaluation") {
  const double s = std::sin(deg_to_rad(78.0));
  const double omega = s + 1e-3;
  const auto cf = closed_form_solution(omega, {s, 1.0 + omega}, 0.03);
  CHECK(std::fabs(cf.g1.real()) < 1e-16);
  CHECK(rel_diff(cf.g1.imag(), -0.15261367100408547) < 1e-12);
  CHECK(rel_diff(cf.g_minus1.imag(), -0.011388037465885638) < 1e-12);
  CHECK(std::fabs(cf.g_minus1.real()) < 1e-16);
  CHECK(rel_diff(cf.g0.real(), 0.092681549474596123) < 1e-12);
  CHECK(std::fabs(cf.g0.imag()) < 1e-16);
}

TEST_CASE("order-1 solves reproduce the closed form") {
  for (const auto& d : testutil::make_draws(52201u, 50)) {
    const auto sys = build_system(d.omega(), d.params(), d.k_dq0, 1);
    const auto tri = solve_tridiagonal(sys);
    const auto dense = solve_dense_oracle(sys);
    if (tri.condition_flag || dense.condition_flag) continue;
    const auto cf = closed_form_solution(d.omega(), d.params(), d.k_dq0);
    CHECK(rel_diff(tri.at(1), cf.g1) < 1e-12);
    CHECK(rel_diff(tri.at(-1), cf.g_minus1) < 1e-12);
    CHECK(rel_diff(dense.at(1), cf.g1) < 1e-12);
    // g0 = -1 + K/D cancels when the drive is weak, so its error is absolute
    // (~eps * K/|B|) in every formulation; compare on the max(1,|g0|) scale.
    CHECK(std::abs(tri.at(0) - cf.g0) < 1e-12 * std::max(1.0, std::abs(cf.g0)));
    CHECK(std::abs(dense.at(0) - cf.g0) < 1e-12 * std::max(1.0, std::abs(cf.g0)));
  }
}

TEST_CASE("tridiagonal and dense elimination agree componentwise") {
  int checked = 0;
  for (const auto& d : testutil::make_draws(52202u, 50)) {
    const auto sys = build_system(d.omega(), d.params(), d.k_dq0, d.order);
    const auto tri = solve_tridiagonal(sys);
    const auto dense = solve_dense_oracle(sys);
    if (tri.condition_flag || dense.condition_flag) continue;
    ++checked;
    for (int m = -d.order; m <= d.order; ++m)
      CHECK(rel_diff(tri.at(m), dense.at(m)) < 1e-10);
  }
  CHECK(checked >= 45);
}

TEST_CASE("residual bound holds for unflagged solves") {
  for (const auto& d : testutil::make_draws(52203u, 40)) {
    const auto sys = build_system(d.omega(), d.params(), d.k_dq0, d.order);
    for (const auto& sol : {solve_tridiagonal(sys), solve_dense_oracle(sys)}) {
      if (sol.condition_flag) continue;
      double gmax = 0.0;
      for (const auto& v : sol.g) gmax = std::max(gmax, std::abs(v));
      CHECK(sol.residual <= 1e-10 * std::max(1.0, gmax));
      CHECK(sol.residual <= 1e-12);  // entries are O(1) on these draws
    }
  }
}

TEST_CASE("exactly singular system throws in both solvers") {
  // K vanishes at the m = 0 sideband and dq0 = 0 decouples the rows, leaving
  // an exactly zero pivot.
  const auto sys = build_system(1.0, {1.0, 0.5}, 0.0, 2);
  CHECK(sys.diag[2] == std::complex<double>{0.0, 0.0});
  CHECK_THROWS_AS(solve_tridiagonal(sys), SingularSystemError);
  CHECK_THROWS_AS(solve_dense_oracle(sys), SingularSystemError);
}

TEST_CASE("perturbative solution: statics and branch points") {
  const ChannelParams p{0.4, 1.25};
  const auto zero = perturbative_solution(0.9, p, 0.0);
  CHECK(zero.g1 == std::complex<double>{0.0, 0.0});
  CHECK(zero.g_minus1 == std::complex<double>{0.0, 0.0});
  // omega - omega0 lands exactly on the branch point K = 0.
  CHECK_THROWS_AS(perturbative_solution(2.0, ChannelParams{1.0, 1.0}, 0.01),
                  std::domain_error);
}

TEST_CASE("perturbative g1 stays finite toward the grazing threshold") {
  const double s = std::sin(deg_to_rad(78.0));
  std::vector<double> xs = testutil::log_grid(1e-14, 1e-12, 12);
  std::vector<double> ys;
  for (double delta : xs) {
    const double omega = s + delta;
    ys.push_back(std::abs(perturbative_solution(omega, {s, 1.0 + omega}, 0.03).g1));
  }
  CHECK(std::fabs(testutil::loglog_slope(xs, ys)) < 0.02);
}

TEST_CASE("closed form: grazing limit is exact") {
  // omega = k_par exactly: K(omega) = 0, the drive cannot excite the channel
  // and the elastic amplitude cancels the input wave.
  const ChannelParams p{0.97, 1.9};
  const auto cf = closed_form_solution(0.97, p, 0.03);
  CHECK(cf.g1 == std::complex<double>{0.0, 0.0});
  CHECK(cf.g0 == std::complex<double>{-1.0, 0.0});
  CHECK(cf.g_minus1 == std::complex<double>{0.0, 0.0});
}

TEST_CASE("closed form: degenerate drive H(omega) = 0 is rejected") {
  // omega*(omega0 - omega) + k_par^2 = 2*(-0.5) + 1 = 0 exactly.
  CHECK_THROWS_AS(closed_form_solution(2.0, ChannelParams{1.0, 1.5}, 0.01),
                  std::domain_error);
  // Static mirror takes the continuous limit instead.
  const auto cf = closed_form_solution(2.0, ChannelParams{1.0, 1.5}, 0.0);
  CHECK(cf.g0 == std::complex<double>{0.0, 0.0});
}

TEST_CASE("advanced coefficients are the conjugate map") {
  const auto sol = solve_tridiagonal(reference_system());
  const auto f = advanced_coefficients(sol);
  for (int m = -3; m <= 3; ++m) CHECK(f.at(m) == std::conj(sol.at(m)));
  const auto back = advanced_coefficients(f);
  for (int m = -3; m <= 3; ++m) CHECK(back.at(m) == sol.at(m));
}

TEST_CASE("truncated g1 at the reference point matches mpmath") {
  const auto sol = solve_tridiagonal(reference_system());
  CHECK(rel_diff(sol.at(1).imag(), -0.15235435992080658) < 2e-12);
  CHECK(std::fabs(sol.at(1).real()) < 1e-16);
}

TEST_CASE("truncation M=3 vs M=6 convergence level") {
  // The couplings grow with sideband index, so finite truncation converges to
  // a few parts in 1e8 here (verified against mpmath), not machine epsilon.
  const double s = std::sin(deg_to_rad(78.0));
  const double ds = 7.1870985450110993e-6;
  double worst = 0.0;
  for (double delta : testutil::log_grid(1e-8, 1e-3, 20)) {
    if (std::fabs(delta - ds) <= 10.0 * ds) continue;
    const double omega = s + delta;
    const ChannelParams p{s, 1.0 + omega};
    const auto a = solve_tridiagonal(build_system(omega, p, 0.03, 3));
    const auto b = solve_tridiagonal(build_system(omega, p, 0.03, 6));
    worst = std::max(worst, rel_diff(a.at(1), b.at(1)));
  }
  CHECK(worst < 1e-7);
  CHECK(worst > 1e-9);  // genuine truncation error, not rounding noise
}

TEST_CASE("perturbative-vs-closed g1 difference decays monotonically") {
  const double s = std::sin(deg_to_rad(78.0));
  const double a4 = 0.03 * 0.03 * 0.03 * 0.03;
  double prev = -1.0;
  for (double delta : testutil::log_grid(10.0 * a4, 1000.0 * a4, 30)) {
    const double omega = s + delta;
    const ChannelParams p{s, 1.0 + omega};
    const auto gp = perturbative_solution(omega, p, 0.03).g1;
    const auto gc = closed_form_solution(omega, p, 0.03).g1;
    const double rel = std::abs(gp - gc) / std::abs(gc);
    if (prev >= 0.0) CHECK(rel < prev);
    prev = rel;
  }
}

TEST_CASE("scale invariance: g_m depend only on the dimensionless inputs") {
  const double s = std::sin(deg_to_rad(55.0));
  const double omega = s + 0.01;
  const ChannelParams p{s, 1.0 + omega};
  const auto base = solve_tridiagonal(build_system(omega, p, 0.05, 3));
  for (double scale : {0.25, 2.0, 32.0}) {
    const ChannelParams ps{scale * p.k_par, scale * p.omega0};
    const auto scaled =
        solve_tridiagonal(build_system(scale * omega, ps, 0.05 / scale, 3));
    for (int m = -3; m <= 3; ++m) CHECK(rel_diff(base.at(m), scaled.at(m)) < 1e-12);
  }
}
