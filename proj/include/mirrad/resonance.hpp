#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace mirrad {

// The coarse scan over the rate found no interior peak.
class NoPeakError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Location of the motion-induced resonance shift for one (theta, k_dq0).
// The mechanical resonance frequency moves from k(1 + sin theta) by
// dOmega = k * delta_s; frequency_shift() evaluates that relation using the
// numeric location when present, the analytic one otherwise.
struct ResonanceResult {
  double theta = 0.0;  // radians
  double k_dq0 = 0.0;
  double delta_s_analytic = 0.0;
  std::optional<double> delta_s_numeric;
  double bracket_lo = 0.0;  // final search bracket, meaningful with numeric
  double bracket_hi = 0.0;
  int iterations = 0;
  std::string error;  // nonempty when a sweep point failed

  double frequency_shift(double k) const {
    return k * (delta_s_numeric ? *delta_s_numeric : delta_s_analytic);
  }
};

// Closed-form shift estimate,
//   delta_s = ((k dq0)^4/32) sin^3(t) (1+sin t)^4
//             (1/cos t - 1/sqrt(3 sin^2 t + 4 sin t + 1))^2.
// Quartic in k_dq0; vanishes as theta -> 0. Throws std::domain_error for
// theta outside [0, 90) degrees and std::invalid_argument for k_dq0 <= 0.
double delta_s_analytic(double theta, double k_dq0);

// Argmax of the truncated-system rate over delta: 60-point log scan on
// [1e-2, 1e2] * delta_s_analytic, then ternary refinement of the bracketed
// peak to 1e-6 relative width. At finite truncation the rate singularity
// shows up as a sharp finite peak; its location is what is returned.
// Requires theta in (0, 89.9] degrees and order >= 3; throws NoPeakError when
// the scan is monotone (no interior maximum).
ResonanceResult delta_s_numeric(double theta, double k_dq0, int order = 3);

// Analytic (and optionally numeric) shift per angle. Per-point failures are
// recorded in the result's error field; the sweep itself never aborts.
std::vector<ResonanceResult> shift_vs_angle_sweep(double k_dq0,
                                                  const std::vector<double>& thetas,
                                                  bool with_numeric = false,
                                                  int order = 3);

}  // namespace mirrad
