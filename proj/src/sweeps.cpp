#include "mirrad/sweeps.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "mirrad/resonance.hpp"
#include "mirrad/units.hpp"
#include "mirrad/version.hpp"

namespace mirrad {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kNudgeWindow = 1e-9;  // relative closeness to delta_s
constexpr double kNudgeFactor = 1e-6;  // relative displacement applied

// Endpoints are taken verbatim so the first and last rows carry min and max
// exactly.
std::vector<double> grid_points(const GridSpec& g) {
  std::vector<double> xs(g.count);
  xs.front() = g.min;
  xs.back() = g.max;
  if (g.spacing == GridSpacing::linear) {
    for (int i = 1; i + 1 < g.count; ++i)
      xs[i] = g.min + (g.max - g.min) * i / (g.count - 1);
  } else {
    const double llo = std::log(g.min);
    const double lhi = std::log(g.max);
    for (int i = 1; i + 1 < g.count; ++i)
      xs[i] = std::exp(llo + (lhi - llo) * i / (g.count - 1));
  }
  return xs;
}

bool is_delta_sweep(SweepKind k) {
  return k == SweepKind::figure1 || k == SweepKind::figure1_insert ||
         k == SweepKind::convergence;
}

}  // namespace

SweepSpec SweepSpec::figure1_defaults() {
  SweepSpec s;
  s.kind = SweepKind::figure1;
  s.theta = deg_to_rad(78.0);
  s.k_dq0 = 0.03;
  s.grid = {1e-8, 1e-3, 400, GridSpacing::log};
  s.methods = {Method::perturbative(), Method::closed_form(), Method::truncated(3)};
  return s;
}

SweepSpec SweepSpec::figure1_insert_defaults() {
  SweepSpec s;
  s.kind = SweepKind::figure1_insert;
  s.theta = deg_to_rad(78.0);
  s.k_dq0 = 0.03;
  const double ds = delta_s_analytic(s.theta, s.k_dq0);
  s.grid = {0.5 * ds, 2.0 * ds, 200, GridSpacing::log};
  s.methods = {Method::closed_form(), Method::truncated(3)};
  return s;
}

SweepSpec SweepSpec::figure2_defaults() {
  SweepSpec s;
  s.kind = SweepKind::figure2;
  s.theta = deg_to_rad(78.0);
  s.k_dq0 = 0.03;
  s.grid = {1.0, 89.0, 89, GridSpacing::linear};  // theta in degrees
  return s;
}

SweepSpec SweepSpec::convergence_defaults() {
  SweepSpec s;
  s.kind = SweepKind::convergence;
  s.theta = deg_to_rad(78.0);
  s.k_dq0 = 0.03;
  s.grid = {1e-8, 1e-3, 20, GridSpacing::log};
  s.orders = {3, 6};
  return s;
}

SweepSpec SweepSpec::defaults_for(SweepKind kind) {
  switch (kind) {
    case SweepKind::figure1:
      return figure1_defaults();
    case SweepKind::figure1_insert:
      return figure1_insert_defaults();
    case SweepKind::figure2:
      return figure2_defaults();
    case SweepKind::convergence:
      return convergence_defaults();
  }
  throw std::logic_error("defaults_for: unreachable");
}

void SweepSpec::validate() const {
  if (grid.count < 2) throw std::invalid_argument("SweepSpec: grid.count must be >= 2");
  if (!(grid.min < grid.max))
    throw std::invalid_argument("SweepSpec: grid.min must be < grid.max");
  if (grid.spacing == GridSpacing::log && !(grid.min > 0.0))
    throw std::invalid_argument("SweepSpec: log spacing requires grid.min > 0");
  if (kind == SweepKind::figure1 || kind == SweepKind::figure1_insert) {
    if (methods.empty())
      throw std::invalid_argument("SweepSpec: at least one method required");
    for (const auto& m : methods) m.validate();
  }
  if (kind == SweepKind::figure1_insert) {
    const double ds = delta_s_analytic(theta, k_dq0);
    if (!(grid.min < ds && ds < grid.max))
      throw std::invalid_argument(
          "SweepSpec: figure1_insert grid must straddle delta_s_analytic");
  }
  if (kind == SweepKind::convergence) {
    if (orders.empty()) throw std::invalid_argument("SweepSpec: orders required");
    for (std::size_t i = 0; i < orders.size(); ++i) {
      if (orders[i] < 1) throw std::invalid_argument("SweepSpec: orders must be >= 1");
      if (i > 0 && orders[i] <= orders[i - 1])
        throw std::invalid_argument("SweepSpec: orders must be strictly ascending");
    }
  }
  if (kind != SweepKind::figure2) {
    EmissionQuery probe{theta, k_dq0, grid.min, Method::closed_form()};
    probe.validate();
  } else {
    if (!(k_dq0 > 0.0)) throw std::invalid_argument("SweepSpec: k_dq0 must be > 0");
    if (!(grid.min > 0.0) || grid.max > kThetaMaxDeg)
      throw std::invalid_argument(
          "SweepSpec: figure2 theta grid must lie in (0, 89.9] degrees");
  }
}

SweepResult run_sweep(const SweepSpec& spec) {
  spec.validate();
  const auto t0 = std::chrono::steady_clock::now();

  SweepResult res;
  res.spec = spec;
  res.x_label = spec.kind == SweepKind::figure2 ? "theta_deg" : "delta";

  if (spec.kind == SweepKind::figure2) {
    res.columns = {"delta_s_analytic"};
    if (spec.figure2_numeric) res.columns.push_back("delta_s_numeric");
  } else if (spec.kind == SweepKind::convergence) {
    for (int m : spec.orders) res.columns.push_back("rho_truncated_" + std::to_string(m));
  } else {
    for (const auto& m : spec.methods) res.columns.push_back("rho_" + m.label());
  }

  auto xs = grid_points(spec.grid);

  // Grid points landing on the analytic shift would produce meaningless
  // flagged quotients; nudge them off by one part in 1e6.
  double ds = 0.0;
  if (is_delta_sweep(spec.kind)) ds = delta_s_analytic(spec.theta, spec.k_dq0);

  res.rows.reserve(xs.size());

  if (spec.kind == SweepKind::figure2) {
    std::vector<double> thetas;
    thetas.reserve(xs.size());
    for (double x : xs) thetas.push_back(deg_to_rad(x));
    const auto points =
        shift_vs_angle_sweep(spec.k_dq0, thetas, spec.figure2_numeric,
                             spec.numeric_order);
    for (std::size_t i = 0; i < xs.size(); ++i) {
      SweepRow row;
      row.x = xs[i];
      const bool analytic_ok = std::isfinite(points[i].delta_s_analytic) &&
                               (points[i].delta_s_analytic > 0.0 ||
                                points[i].error.empty());
      row.values.push_back(analytic_ok ? points[i].delta_s_analytic : kNaN);
      row.flags.push_back(!analytic_ok);
      if (spec.figure2_numeric) {
        if (points[i].delta_s_numeric) {
          row.values.push_back(*points[i].delta_s_numeric);
          row.flags.push_back(false);
        } else {
          row.values.push_back(kNaN);
          row.flags.push_back(true);
        }
      }
      res.rows.push_back(std::move(row));
    }
    res.meta.tool = kToolName;
    res.meta.version = kVersion;
    res.meta.deterministic = true;
    res.meta.wall_ms = std::chrono::duration<double, std::milli>(
                           std::chrono::steady_clock::now() - t0)
                           .count();
    return res;
  }

  for (double x : xs) {
    SweepRow row;
    if (is_delta_sweep(spec.kind) && std::fabs(x - ds) < kNudgeWindow * ds) {
      x *= 1.0 + kNudgeFactor;
      row.nudged = true;
    }
    row.x = x;
    auto eval = [&](auto&& fn) {
      try {
        auto [v, flag] = fn();
        row.values.push_back(v);
        row.flags.push_back(flag);
      } catch (const std::exception&) {
        row.values.push_back(kNaN);
        row.flags.push_back(true);
      }
    };
    if (spec.kind == SweepKind::convergence) {
      for (int order : spec.orders)
        eval([&] {
          EmissionQuery q{spec.theta, spec.k_dq0, x, Method::truncated(order)};
          const auto s = rate_direct(q);
          return std::pair{s.rho, s.singular};
        });
    } else {
      for (const auto& method : spec.methods)
        eval([&] {
          EmissionQuery q{spec.theta, spec.k_dq0, x, method};
          const auto s = rate_direct(q);
          return std::pair{s.rho, s.singular};
        });
    }
    res.rows.push_back(std::move(row));
  }

  res.meta.tool = kToolName;
  res.meta.version = kVersion;
  res.meta.deterministic = true;
  res.meta.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
          .count();
  return res;
}

ConvergenceReport convergence_report(double theta, double k_dq0, double delta,
                                     const std::vector<int>& orders) {
  if (!std::isfinite(theta) || theta < 0.0 || theta > kThetaMaxRad)
    throw std::invalid_argument("convergence_report: theta must lie in [0, 89.9] deg");
  if (!(k_dq0 >= 0.0) || !std::isfinite(k_dq0))
    throw std::invalid_argument("convergence_report: k_dq0 must be finite and >= 0");
  if (orders.empty())
    throw std::invalid_argument("convergence_report: orders must be nonempty");
  for (std::size_t i = 0; i < orders.size(); ++i) {
    if (orders[i] < 1)
      throw std::invalid_argument("convergence_report: orders must be >= 1");
    if (i > 0 && orders[i] <= orders[i - 1])
      throw std::invalid_argument("convergence_report: orders must be ascending");
  }

  ConvergenceReport rep;
  rep.theta = theta;
  rep.k_dq0 = k_dq0;
  rep.delta = delta;

  const double s = std::sin(theta);
  const double c = std::cos(theta);
  const double omega = s + delta;
  const ChannelParams params{s, 1.0 + omega};

  for (int order : orders) {
    const auto sol = solve_tridiagonal(build_system(omega, params, k_dq0, order));
    ConvergenceRow row;
    row.order = order;
    row.g1 = sol.at(1);
    row.residual = sol.residual;
    row.rho = delta > 0.0
                  ? c * c * std::norm(row.g1) / std::sqrt(delta * (delta + 2.0 * s))
                  : 0.0;
    rep.rows.push_back(row);
  }

  for (std::size_t i = 1; i < rep.rows.size() && !rep.converged_order; ++i) {
    const double change = std::abs(rep.rows[i].g1 - rep.rows[i - 1].g1);
    if (change <= 1e-10 * std::abs(rep.rows[i].g1))
      rep.converged_order = rep.rows[i].order;
  }
  return rep;
}

}  // namespace mirrad
