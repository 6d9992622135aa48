#include "mirrad/emission.hpp"

#include <cmath>
#include <stdexcept>

#include "mirrad/units.hpp"

namespace mirrad {

namespace {

constexpr double kCancellationFlagRatio = 1e-12;

struct NumberResult {
  double value = 0.0;
  bool singular = false;
};

NumberResult number_average_impl(double kx, const ChannelParams& params, double dq0,
                                 const Method& method) {
  const double k = std::hypot(kx, params.k_par);
  if (params.omega0 - k - params.k_par <= 0.0) return {0.0, false};
  const double omega = params.omega0 - k;
  const auto g1 = g1_amplitude(omega, params, dq0, method);
  const double kpart = kx_branch(omega, params).value.real();  // travelling here
  return {4.0 * kx * kx / k * std::norm(g1.g1) / kpart, g1.singular};
}

}  // namespace

std::string Method::label() const {
  switch (kind) {
    case Kind::perturbative:
      return "perturbative";
    case Kind::closed_form:
      return "closed_form";
    case Kind::truncated:
      return "truncated_" + std::to_string(order);
  }
  return "unknown";
}

void Method::validate() const {
  if (kind == Kind::truncated && order < 1)
    throw std::invalid_argument("Method: truncation order must be >= 1");
}

void EmissionQuery::validate() const {
  if (!std::isfinite(theta) || theta < 0.0 || theta > kThetaMaxRad)
    throw std::invalid_argument("EmissionQuery: theta must lie in [0, 89.9] degrees");
  if (!(k_dq0 > 0.0) || !std::isfinite(k_dq0))
    throw std::invalid_argument("EmissionQuery: k_dq0 must be finite and > 0");
  if (!std::isfinite(delta))
    throw std::invalid_argument("EmissionQuery: delta must be finite");
  method.validate();
}

G1Result g1_amplitude(double omega, const ChannelParams& params, double dq0,
                      const Method& method) {
  method.validate();
  switch (method.kind) {
    case Method::Kind::perturbative:
      return {perturbative_solution(omega, params, dq0).g1, false};
    case Method::Kind::closed_form: {
      double scale = 0.0;
      const auto denom = closed_form_denominator(omega, params, dq0, &scale);
      const bool flag = std::abs(denom) < kCancellationFlagRatio * scale;
      return {closed_form_solution(omega, params, dq0).g1, flag};
    }
    case Method::Kind::truncated: {
      const auto sol =
          solve_tridiagonal(build_system(omega, params, dq0, method.order));
      return {sol.at(1), sol.condition_flag};
    }
  }
  throw std::logic_error("g1_amplitude: unreachable");
}

double number_average(double kx, const ChannelParams& params, double dq0,
                      const Method& method) {
  params.validate();
  if (!(kx > 0.0) || !std::isfinite(kx))
    throw std::invalid_argument("number_average: kx must be finite and > 0");
  return number_average_impl(kx, params, dq0, method).value;
}

EmissionSample rate_direct(const EmissionQuery& q) {
  q.validate();
  if (q.delta <= 0.0) return {q, 0.0, false};
  const double s = std::sin(q.theta);
  const double c = std::cos(q.theta);
  const double omega = s + q.delta;
  const ChannelParams params{s, 1.0 + omega};
  const auto g1 = g1_amplitude(omega, params, q.k_dq0, q.method);
  const double rho =
      c * c * std::norm(g1.g1) / std::sqrt(q.delta * (q.delta + 2.0 * s));
  return {q, rho, g1.singular};
}

EmissionSample rate_from_number(const EmissionQuery& q) {
  q.validate();
  if (q.delta <= 0.0) return {q, 0.0, false};
  const double s = std::sin(q.theta);
  const double c = std::cos(q.theta);
  const ChannelParams params{s, 1.0 + (s + q.delta)};
  const auto n = number_average_impl(c, params, q.k_dq0, q.method);
  // Stripping S k^2/(2 pi^3) from d2R/dk dOmega = S k^2/(2 pi)^3 * <N>/dt
  // leaves exactly <N coefficient>/4.
  return {q, 0.25 * n.value, n.singular};
}

double kx_smalldelta_approx(const EmissionQuery& q) {
  q.validate();
  if (q.delta < 0.0)
    throw std::invalid_argument("kx_smalldelta_approx: delta must be >= 0");
  return std::sqrt(2.0 * std::sin(q.theta) * q.delta);
}

}  // namespace mirrad
