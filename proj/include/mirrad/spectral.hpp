#pragma once

#include <complex>

namespace mirrad {

// Conserved parameters of one scattering channel.
struct ChannelParams {
  double k_par = 0.0;   // parallel wavevector magnitude, >= 0
  double omega0 = 1.0;  // mechanical angular frequency, > 0

  void validate() const;  // throws std::invalid_argument
};

enum class Regime { travelling, evanescent, boundary };

// Normal (x) wavenumber component on the physical branch.
struct Wavenumber {
  std::complex<double> value{0.0, 0.0};
  Regime regime = Regime::boundary;
};

// K(omega), the branch of sqrt(omega^2 - k_par^2) selected so that scattered
// components either propagate away from the mirror or decay for x > 0:
//
//   |omega| > k_par : sign(omega) * sqrt(omega^2 - k_par^2)   (travelling)
//   |omega| < k_par : +i * sqrt(k_par^2 - omega^2)            (evanescent)
//   |omega| = k_par : exactly 0                               (boundary)
//
// For omega < -k_par the travelling sign gives K < 0, so the outgoing wave
// has k_x = -K > 0. On the evanescent interval the +i|K| form is used for
// both signs of omega; a principal-branch i*eps limit would instead give
// -i|K| for omega < 0, but only the decaying (+i) choice is admissible for
// x > 0 and nothing on the emission-rate path evaluates K there.
Wavenumber kx_branch(double omega, const ChannelParams& params);

// H(omega) = omega*Omega0 - K(omega)^2 = omega*(Omega0 - omega) + k_par^2.
// Real for all real omega since K^2 = omega^2 - k_par^2 on every branch.
double h_aux(double omega, const ChannelParams& params);

// Lorentzian spectral profile of the mirror's (exponentially damped) motion.
struct LineshapeParams {
  double omega0;   // mechanical frequency, > 0
  double delta_t;  // coarse-grained damping time; omega0*delta_t >= 1e3

  // Default damping keeps omega0*delta_t = 1e6.
  explicit LineshapeParams(double omega0_in);
  LineshapeParams(double omega0_in, double delta_t_in);

  void validate() const;
};

// h(Omega) = (1/pi) (1/dt) / ((Omega - Omega0)^2 + (1/dt)^2); peak dt/pi.
double lineshape(double Omega, const LineshapeParams& p);

// Quadrature of h over the window Omega0 +/- 1e3/dt (no tail correction).
// The full-line integral is exactly 1; the window misses ~(2/pi)*1e-3.
double lineshape_window_integral(const LineshapeParams& p);

// Window quadrature plus analytic Lorentzian tails; equals 1 up to quadrature
// error.
double lineshape_norm_integral(const LineshapeParams& p);

// Same for h^2; the full-line value is dt/(2*pi).
double lineshape_square_integral(const LineshapeParams& p);

}  // namespace mirrad
