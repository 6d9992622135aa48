#pragma once

#include <cmath>
#include <cstddef>

namespace mirrad {

// Adaptive Gauss-Kronrod 7/15 quadrature. The embedded Gauss-7 rule gives the
// error estimate; panels are bisected until |K15 - G7| meets the tolerance.
// Nodes and weights are the QUADPACK dqk15 constants.
namespace detail {

inline constexpr double kGk15Nodes[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
};

inline constexpr double kKronrodWeights[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
};

inline constexpr double kGaussWeights[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
};

template <typename F>
void gk15_panel(const F& f, double a, double b, double& kronrod, double& err) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double f_mid = f(mid);
  double res_g = kGaussWeights[3] * f_mid;
  double res_k = kKronrodWeights[7] * f_mid;
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kGk15Nodes[j];
    const double fsum = f(mid - dx) + f(mid + dx);
    res_k += kKronrodWeights[j] * fsum;
    if (j % 2 == 1) res_g += kGaussWeights[j / 2] * fsum;
  }
  kronrod = res_k * half;
  err = std::fabs((res_k - res_g) * half);
}

template <typename F>
double gk15_adaptive(const F& f, double a, double b, double abs_tol, double rel_tol,
                     int depth) {
  double val, err;
  gk15_panel(f, a, b, val, err);
  if (depth <= 0 || err <= abs_tol || err <= rel_tol * std::fabs(val)) return val;
  const double mid = 0.5 * (a + b);
  return gk15_adaptive(f, a, mid, 0.5 * abs_tol, rel_tol, depth - 1) +
         gk15_adaptive(f, mid, b, 0.5 * abs_tol, rel_tol, depth - 1);
}

}  // namespace detail

template <typename F>
double integrate(const F& f, double a, double b, double abs_tol = 1e-12,
                 double rel_tol = 1e-12, int max_depth = 48) {
  return detail::gk15_adaptive(f, a, b, abs_tol, rel_tol, max_depth);
}

}  // namespace mirrad
