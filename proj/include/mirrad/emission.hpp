#pragma once

#include <complex>
#include <string>

#include "mirrad/sideband.hpp"
#include "mirrad/spectral.hpp"

namespace mirrad {

// How the downshifted amplitude g_1 is obtained.
struct Method {
  enum class Kind { perturbative, closed_form, truncated };

  Kind kind = Kind::closed_form;
  int order = 3;  // truncation half-width, meaningful for Kind::truncated only

  static Method perturbative() { return {Kind::perturbative, 0}; }
  static Method closed_form() { return {Kind::closed_form, 0}; }
  static Method truncated(int order) { return {Kind::truncated, order}; }

  std::string label() const;  // "perturbative" | "closed_form" | "truncated_<M>"
  void validate() const;
};

// One point of the normalized angular emission-rate distribution.
// Dimensionless throughout (k = 1): k_par = sin(theta), k_x = cos(theta),
// omega = delta + sin(theta), omega0 = 1 + sin(theta) + delta.
struct EmissionQuery {
  double theta = 0.0;   // emission angle, radians, in [0, kThetaMaxRad]
  double k_dq0 = 0.0;   // dimensionless oscillation amplitude, > 0
  double delta = 0.0;   // detuning omega0/k - 1 - sin(theta); any real
  Method method = Method::closed_form();

  void validate() const;
};

struct EmissionSample {
  EmissionQuery query;
  double rho = 0.0;      // normalized rate, (2 pi^3 / S k^2) d2R/dk dOmega
  bool singular = false; // resonance-dominated value, see g1_amplitude
};

struct G1Result {
  std::complex<double> g1{0.0, 0.0};
  bool singular = false;
};

// g_1 at base frequency omega for the channel, via the requested method.
// The singular flag is set when the closed-form denominator cancels below
// 1e-12 of its term magnitudes, or when the truncated solve reports a
// near-zero pivot.
G1Result g1_amplitude(double omega, const ChannelParams& params, double dq0,
                      const Method& method);

// Coefficient of dt in the averaged output photon number for the channel
// (k_x, k_par): (4 k_x^2 / k) Theta(omega0 - k - k_par) |g_1(omega0-k)|^2 /
// K(omega0-k), with k = sqrt(k_x^2 + k_par^2). Total on kx > 0; returns 0 at
// and below the travelling-wave threshold.
double number_average(double kx, const ChannelParams& params, double dq0,
                      const Method& method);

// rho = cos^2(theta) |g_1|^2 / sqrt(delta (delta + 2 sin theta)) for
// delta > 0; exactly 0 for delta <= 0.
EmissionSample rate_direct(const EmissionQuery& query);

// Same quantity assembled from number_average and the sphere-volume
// conversion; equals rate_direct up to floating-point algebra.
EmissionSample rate_from_number(const EmissionQuery& query);

// Leading small-delta form of the partner wavenumber,
// K(omega0 - k) = k sqrt(2 sin(theta) delta) [1 + O(delta)].
double kx_smalldelta_approx(const EmissionQuery& query);

}  // namespace mirrad
