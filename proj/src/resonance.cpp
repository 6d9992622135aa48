#include "mirrad/resonance.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "mirrad/emission.hpp"
#include "mirrad/units.hpp"

namespace mirrad {

namespace {

double rho_truncated(double theta, double k_dq0, double delta, int order) {
  EmissionQuery q;
  q.theta = theta;
  q.k_dq0 = k_dq0;
  q.delta = delta;
  q.method = Method::truncated(order);
  return rate_direct(q).rho;
}

}  // namespace

double delta_s_analytic(double theta, double k_dq0) {
  if (!std::isfinite(theta) || theta < 0.0 || theta >= std::numbers::pi / 2.0)
    throw std::domain_error("delta_s_analytic: theta must lie in [0, 90) degrees");
  if (!(k_dq0 > 0.0) || !std::isfinite(k_dq0))
    throw std::invalid_argument("delta_s_analytic: k_dq0 must be finite and > 0");
  const double s = std::sin(theta);
  const double c = std::cos(theta);
  const double a2 = k_dq0 * k_dq0;
  const double a4 = a2 * a2;
  const double one_plus_s2 = (1.0 + s) * (1.0 + s);
  const double bracket = 1.0 / c - 1.0 / std::sqrt(3.0 * s * s + 4.0 * s + 1.0);
  return a4 / 32.0 * (s * s * s) * (one_plus_s2 * one_plus_s2) * bracket * bracket;
}

ResonanceResult delta_s_numeric(double theta, double k_dq0, int order) {
  if (!std::isfinite(theta) || theta <= 0.0 || theta > kThetaMaxRad)
    throw std::domain_error("delta_s_numeric: theta must lie in (0, 89.9] degrees");
  if (order < 3) throw std::invalid_argument("delta_s_numeric: order must be >= 3");

  ResonanceResult res;
  res.theta = theta;
  res.k_dq0 = k_dq0;
  res.delta_s_analytic = delta_s_analytic(theta, k_dq0);

  // Coarse log-spaced scan, two decades either side of the analytic estimate.
  constexpr int kScanPoints = 60;
  const double log_lo = std::log(res.delta_s_analytic / 100.0);
  const double log_hi = std::log(res.delta_s_analytic * 100.0);
  double best = -1.0;
  int best_i = 0;
  std::vector<double> lx(kScanPoints);
  for (int i = 0; i < kScanPoints; ++i) {
    lx[i] = log_lo + (log_hi - log_lo) * i / (kScanPoints - 1);
    const double v = rho_truncated(theta, k_dq0, std::exp(lx[i]), order);
    if (v > best) {
      best = v;
      best_i = i;
    }
  }
  if (best_i == 0 || best_i == kScanPoints - 1)
    throw NoPeakError("delta_s_numeric: no interior rate peak in the scan window");

  // Ternary refinement in log-delta until the bracket is 1e-6 relative wide.
  double lo = lx[best_i - 1];
  double hi = lx[best_i + 1];
  int iterations = 0;
  while (hi - lo > 9.9e-7) {
    const double m1 = lo + (hi - lo) / 3.0;
    const double m2 = hi - (hi - lo) / 3.0;
    if (rho_truncated(theta, k_dq0, std::exp(m1), order) <
        rho_truncated(theta, k_dq0, std::exp(m2), order))
      lo = m1;
    else
      hi = m2;
    ++iterations;
  }

  res.bracket_lo = std::exp(lo);
  res.bracket_hi = std::exp(hi);
  res.delta_s_numeric = std::exp(0.5 * (lo + hi));
  res.iterations = iterations;
  return res;
}

std::vector<ResonanceResult> shift_vs_angle_sweep(double k_dq0,
                                                  const std::vector<double>& thetas,
                                                  bool with_numeric, int order) {
  std::vector<ResonanceResult> out;
  out.reserve(thetas.size());
  for (const double theta : thetas) {
    ResonanceResult r;
    r.theta = theta;
    r.k_dq0 = k_dq0;
    try {
      r.delta_s_analytic = delta_s_analytic(theta, k_dq0);
      if (with_numeric) r = delta_s_numeric(theta, k_dq0, order);
    } catch (const std::exception& e) {
      // The analytic value survives a failed numeric locate.
      r.error = e.what();
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace mirrad
