#include "mirrad/spectral.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "mirrad/quadrature.hpp"

namespace mirrad {

void ChannelParams::validate() const {
  if (!(k_par >= 0.0) || !std::isfinite(k_par))
    throw std::invalid_argument("ChannelParams: k_par must be finite and >= 0");
  if (!(omega0 > 0.0) || !std::isfinite(omega0))
    throw std::invalid_argument("ChannelParams: omega0 must be finite and > 0");
}

Wavenumber kx_branch(double omega, const ChannelParams& params) {
  params.validate();
  const double a = std::fabs(omega);
  // Factored radicand keeps relative accuracy near the branch point, where
  // a^2 - k_par^2 would cancel.
  if (a > params.k_par) {
    const double root = std::sqrt((a - params.k_par) * (a + params.k_par));
    return {{omega > 0.0 ? root : -root, 0.0}, Regime::travelling};
  }
  if (a < params.k_par) {
    const double root = std::sqrt((params.k_par - a) * (params.k_par + a));
    return {{0.0, root}, Regime::evanescent};
  }
  return {{0.0, 0.0}, Regime::boundary};
}

double h_aux(double omega, const ChannelParams& params) {
  params.validate();
  return omega * (params.omega0 - omega) + params.k_par * params.k_par;
}

LineshapeParams::LineshapeParams(double omega0_in)
    : omega0(omega0_in), delta_t(1e6 / omega0_in) {
  validate();
}

LineshapeParams::LineshapeParams(double omega0_in, double delta_t_in)
    : omega0(omega0_in), delta_t(delta_t_in) {
  validate();
}

void LineshapeParams::validate() const {
  if (!(omega0 > 0.0) || !std::isfinite(omega0))
    throw std::invalid_argument("LineshapeParams: omega0 must be finite and > 0");
  if (!(delta_t > 0.0) || !std::isfinite(delta_t))
    throw std::invalid_argument("LineshapeParams: delta_t must be finite and > 0");
  if (!(omega0 * delta_t >= 1e3))
    throw std::invalid_argument(
        "LineshapeParams: coarse-graining requires omega0*delta_t >= 1e3");
}

double lineshape(double Omega, const LineshapeParams& p) {
  const double gamma = 1.0 / p.delta_t;
  const double d = Omega - p.omega0;
  return (gamma / std::numbers::pi) / (d * d + gamma * gamma);
}

namespace {

constexpr double kWindowGammas = 1e3;  // half-width of the quadrature window, in 1/dt

// Integral of h over (-inf, x] relative to the peak: (1/pi) atan((x-w0)*dt) + 1/2.
double lorentzian_cdf_tail(double half_width_gammas) {
  // Mass outside +/- W gammas: 1 - (2/pi) atan(W).
  return 1.0 - (2.0 / std::numbers::pi) * std::atan(half_width_gammas);
}

// Mass of h^2 outside +/- W gammas. The full-line mass is dt/(2 pi) and the
// fraction inside the window is (2/pi) * (atan(W) + W/(1+W^2)).
double lorentzian_sq_tail(double w, double delta_t) {
  const double full = delta_t / (2.0 * std::numbers::pi);
  const double inside =
      2.0 * (std::atan(w) + w / (1.0 + w * w)) / std::numbers::pi;
  return full * (1.0 - inside);
}

}  // namespace

double lineshape_window_integral(const LineshapeParams& p) {
  p.validate();
  const double w = kWindowGammas / p.delta_t;
  return integrate([&](double x) { return lineshape(x, p); }, p.omega0 - w,
                   p.omega0 + w, 1e-10, 1e-10);
}

double lineshape_norm_integral(const LineshapeParams& p) {
  return lineshape_window_integral(p) + lorentzian_cdf_tail(kWindowGammas);
}

double lineshape_square_integral(const LineshapeParams& p) {
  p.validate();
  const double w = kWindowGammas / p.delta_t;
  const double window = integrate(
      [&](double x) {
        const double h = lineshape(x, p);
        return h * h;
      },
      p.omega0 - w, p.omega0 + w, 1e-16 * p.delta_t, 1e-10);
  return window + lorentzian_sq_tail(kWindowGammas, p.delta_t);
}

}  // namespace mirrad
