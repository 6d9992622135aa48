#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "mirrad/emission.hpp"

namespace mirrad {

enum class SweepKind { figure1, figure1_insert, figure2, convergence };

enum class GridSpacing { linear, log };

struct GridSpec {
  double min = 0.0;
  double max = 0.0;
  int count = 0;
  GridSpacing spacing = GridSpacing::linear;
};

// One data-generation run: rate-vs-delta curves (figure1 kinds), shift-vs-angle
// (figure2), or truncation-order columns (convergence). Scenario defaults are
// theta = 78 deg, k_dq0 = 0.03.
struct SweepSpec {
  SweepKind kind = SweepKind::figure1;
  double theta = 0.0;  // radians
  double k_dq0 = 0.0;
  GridSpec grid;
  std::vector<Method> methods;  // figure1 / figure1_insert value columns
  std::vector<int> orders;      // convergence value columns
  bool figure2_numeric = false;
  int numeric_order = 3;

  static SweepSpec figure1_defaults();
  static SweepSpec figure1_insert_defaults();
  static SweepSpec figure2_defaults();
  static SweepSpec convergence_defaults();
  static SweepSpec defaults_for(SweepKind kind);

  void validate() const;
};

struct SweepRow {
  double x = 0.0;                // delta, or theta in degrees for figure2
  std::vector<double> values;    // one per column; NaN on a per-point error
  std::vector<bool> flags;       // singular / per-point error markers
  bool nudged = false;           // grid point moved off the analytic shift
};

struct SweepMeta {
  std::string tool;
  std::string version;
  bool deterministic = true;  // rows are a pure function of the SweepSpec
  double wall_ms = 0.0;
};

struct SweepResult {
  SweepSpec spec;
  std::string x_label;               // "delta" or "theta_deg"
  std::vector<std::string> columns;  // value column names
  std::vector<SweepRow> rows;
  SweepMeta meta;
};

// Evaluates the grid deterministically; per-point errors land in the row's
// flag (value NaN) and never abort the sweep.
SweepResult run_sweep(const SweepSpec& spec);

struct ConvergenceRow {
  int order = 0;
  std::complex<double> g1{0.0, 0.0};
  double rho = 0.0;
  double residual = 0.0;
};

struct ConvergenceReport {
  double theta = 0.0;
  double k_dq0 = 0.0;
  double delta = 0.0;
  std::vector<ConvergenceRow> rows;
  // First order whose g1 moved less than 1e-10 relative from the previous row.
  std::optional<int> converged_order;
};

// Truncation study at a single delta; orders must be nonempty and strictly
// ascending, each >= 1.
ConvergenceReport convergence_report(double theta, double k_dq0, double delta,
                                     const std::vector<int>& orders);

}  // namespace mirrad
