#include "mirrad/sideband.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

namespace mirrad {

namespace {

using cplx = std::complex<double>;

constexpr double kPivotFlagRatio = 1e-12;
constexpr double kDriveWarn = 0.1;
constexpr double kDriveReject = 0.3;

double max_entry_magnitude(const SidebandSystem& sys) {
  double m = 0.0;
  for (const auto& d : sys.diag) m = std::max(m, std::abs(d));
  for (const auto& o : sys.offdiag) m = std::max(m, std::abs(o));
  return m;
}

double residual_max_norm(const SidebandSystem& sys,
                         const std::vector<cplx>& g) {
  const int n = sys.size();
  double r = 0.0;
  for (int i = 0; i < n; ++i) {
    cplx acc = sys.diag[i] * g[i] - sys.rhs[i];
    if (i > 0) acc += sys.offdiag[i - 1] * g[i - 1];
    if (i + 1 < n) acc += sys.offdiag[i] * g[i + 1];
    r = std::max(r, std::abs(acc));
  }
  return r;
}

}  // namespace

bool drive_strength_marginal(const ChannelParams& params, double dq0) {
  const double v = params.omega0 * dq0;
  return v >= kDriveWarn && v < kDriveReject;
}

SidebandSystem build_system(double omega, const ChannelParams& params, double dq0,
                            int order) {
  params.validate();
  if (order < 1) throw std::invalid_argument("build_system: order must be >= 1");
  if (!(dq0 >= 0.0) || !std::isfinite(dq0))
    throw std::invalid_argument("build_system: dq0 must be finite and >= 0");
  if (params.omega0 * dq0 >= kDriveReject)
    throw std::invalid_argument(
        "build_system: omega0*dq0 >= 0.3, nonrelativistic assumption violated");

  SidebandSystem sys;
  sys.omega = omega;
  sys.params = params;
  sys.dq0 = dq0;
  sys.order = order;
  const int n = sys.size();
  sys.diag.resize(n);
  sys.offdiag.resize(n - 1);
  sys.rhs.assign(n, cplx{0.0, 0.0});

  const cplx i_unit{0.0, 1.0};
  for (int i = 0; i < n; ++i) {
    const int m = i - order;
    const double wm = sys.sideband_frequency(m);
    sys.diag[i] = i_unit * kx_branch(wm, params).value;
    if (i + 1 < n) sys.offdiag[i] = 0.5 * dq0 * h_aux(wm, params);
  }
  sys.rhs[order + 1] = -0.5 * dq0 * h_aux(omega, params);
  sys.rhs[order - 1] = -0.5 * dq0 * h_aux(omega + params.omega0, params);
  return sys;
}

SidebandSolution solve_tridiagonal(const SidebandSystem& sys) {
  const int n = sys.size();
  const double scale = max_entry_magnitude(sys);

  SidebandSolution sol;
  sol.order = sys.order;
  sol.g.assign(n, cplx{0.0, 0.0});

  auto check_pivot = [&](const cplx& p) {
    const double mag = std::abs(p);
    if (mag == 0.0)
      throw SingularSystemError("solve_tridiagonal: exactly singular system");
    if (mag < kPivotFlagRatio * scale) sol.condition_flag = true;
  };

  std::vector<cplx> sup(n - 1);  // scaled superdiagonal after elimination
  std::vector<cplx> y(n);        // transformed rhs

  cplx pivot = sys.diag[0];
  check_pivot(pivot);
  sup[0] = sys.offdiag[0] / pivot;
  y[0] = sys.rhs[0] / pivot;
  for (int i = 1; i < n; ++i) {
    pivot = sys.diag[i] - sys.offdiag[i - 1] * sup[i - 1];
    check_pivot(pivot);
    if (i + 1 < n) sup[i] = sys.offdiag[i] / pivot;
    y[i] = (sys.rhs[i] - sys.offdiag[i - 1] * y[i - 1]) / pivot;
  }

  sol.g[n - 1] = y[n - 1];
  for (int i = n - 2; i >= 0; --i) sol.g[i] = y[i] - sup[i] * sol.g[i + 1];

  sol.residual = residual_max_norm(sys, sol.g);
  return sol;
}

SidebandSolution solve_dense_oracle(const SidebandSystem& sys) {
  const int n = sys.size();
  const double scale = max_entry_magnitude(sys);

  std::vector<std::vector<cplx>> a(n, std::vector<cplx>(n, cplx{0.0, 0.0}));
  std::vector<cplx> b(sys.rhs.begin(), sys.rhs.end());
  for (int i = 0; i < n; ++i) {
    a[i][i] = sys.diag[i];
    if (i + 1 < n) {
      a[i][i + 1] = sys.offdiag[i];
      a[i + 1][i] = sys.offdiag[i];
    }
  }

  SidebandSolution sol;
  sol.order = sys.order;
  sol.g.assign(n, cplx{0.0, 0.0});

  for (int col = 0; col < n; ++col) {
    int p = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(a[r][col]) > std::abs(a[p][col])) p = r;
    if (p != col) {
      std::swap(a[p], a[col]);
      std::swap(b[p], b[col]);
    }
    const cplx pivot = a[col][col];
    const double mag = std::abs(pivot);
    if (mag == 0.0)
      throw SingularSystemError("solve_dense_oracle: exactly singular system");
    if (mag < kPivotFlagRatio * scale) sol.condition_flag = true;
    for (int r = col + 1; r < n; ++r) {
      if (a[r][col] == cplx{0.0, 0.0}) continue;
      const cplx f = a[r][col] / pivot;
      for (int c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  for (int r = n - 1; r >= 0; --r) {
    cplx acc = b[r];
    for (int c = r + 1; c < n; ++c) acc -= a[r][c] * sol.g[c];
    sol.g[r] = acc / a[r][r];
  }

  sol.residual = residual_max_norm(sys, sol.g);
  return sol;
}

std::complex<double> closed_form_denominator(double omega, const ChannelParams& params,
                                             double dq0, double* term_scale) {
  const cplx kw = kx_branch(omega, params).value;
  const cplx k1 = kx_branch(omega - params.omega0, params).value;
  const cplx km1 = kx_branch(omega + params.omega0, params).value;
  if (k1 == cplx{0.0, 0.0} || km1 == cplx{0.0, 0.0})
    throw std::domain_error("closed form: K at a sideband branch point");
  const double h = h_aux(omega, params);
  const double hm1 = h_aux(omega + params.omega0, params);
  const double q = 0.25 * dq0 * dq0;
  const cplx t1 = q * h * h / k1;
  const cplx t2 = q * hm1 * hm1 / km1;
  if (term_scale) *term_scale = std::abs(kw) + std::abs(t1) + std::abs(t2);
  return kw + t1 + t2;
}

ClosedFormSolution closed_form_solution(double omega, const ChannelParams& params,
                                        double dq0) {
  params.validate();
  if (!(dq0 >= 0.0) || !std::isfinite(dq0))
    throw std::invalid_argument("closed_form_solution: dq0 must be finite and >= 0");
  if (dq0 == 0.0) return {{0.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}};

  const cplx kw = kx_branch(omega, params).value;
  const cplx k1 = kx_branch(omega - params.omega0, params).value;
  const cplx km1 = kx_branch(omega + params.omega0, params).value;
  if (k1 == cplx{0.0, 0.0} || km1 == cplx{0.0, 0.0})
    throw std::domain_error("closed_form_solution: K at a sideband branch point");
  const double h = h_aux(omega, params);
  if (h == 0.0)
    throw std::domain_error("closed_form_solution: degenerate drive, H(omega) = 0");
  const double hm1 = h_aux(omega + params.omega0, params);

  const cplx denom = closed_form_denominator(omega, params, dq0);
  const cplx i_half{0.0, 0.5};
  ClosedFormSolution out;
  out.g1 = i_half * (kw / k1) * dq0 * h / denom;
  out.g_minus1 = (k1 * hm1) / (km1 * h) * out.g1;
  out.g0 = -1.0 - cplx{0.0, 2.0} * k1 / (dq0 * h) * out.g1;
  return out;
}

PerturbativeSolution perturbative_solution(double omega, const ChannelParams& params,
                                           double dq0) {
  params.validate();
  if (!(dq0 >= 0.0) || !std::isfinite(dq0))
    throw std::invalid_argument("perturbative_solution: dq0 must be finite and >= 0");
  const cplx k1 = kx_branch(omega - params.omega0, params).value;
  const cplx km1 = kx_branch(omega + params.omega0, params).value;
  if (k1 == cplx{0.0, 0.0} || km1 == cplx{0.0, 0.0})
    throw std::domain_error("perturbative_solution: K at a sideband branch point");
  const cplx i_half{0.0, 0.5};
  return {i_half * dq0 * h_aux(omega, params) / k1,
          i_half * dq0 * h_aux(omega + params.omega0, params) / km1};
}

SidebandSolution advanced_coefficients(const SidebandSolution& solution) {
  SidebandSolution f = solution;
  for (auto& v : f.g) v = std::conj(v);
  return f;
}

}  // namespace mirrad
