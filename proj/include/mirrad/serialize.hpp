#pragma once

#include <string>

#include "mirrad/emission.hpp"
#include "mirrad/resonance.hpp"
#include "mirrad/sweeps.hpp"

namespace mirrad::io {

// Shortest-faithful rendering at the given significant-digit count; at
// precision 17 the text re-parses to the identical double.
std::string format_double(double v, int precision);

// The double that format_double's text parses back to.
double round_to_precision(double v, int precision);

std::string kind_name(SweepKind kind);

// CSV: '.' decimal separator, ',' delimiter, LF line endings, header always
// present. Column order is x, value columns, flag columns.
std::string sweep_csv(const SweepResult& r, int precision);
std::string rate_csv(const EmissionSample& s, int precision);
std::string resonance_csv(const ResonanceResult& r, int precision);
std::string convergence_csv(const ConvergenceReport& r, int precision);

// JSON: one object with "meta" and "rows" keys.
std::string sweep_json(const SweepResult& r, int precision);
std::string rate_json(const EmissionSample& s, int precision);
std::string resonance_json(const ResonanceResult& r, int precision);
std::string convergence_json(const ConvergenceReport& r, int precision);

struct CheckOutcome {
  bool parse_ok = false;  // file was readable sweep JSON
  bool ok = false;        // row count and grid monotonicity verified
  std::string message;
};

// Re-reads a sweep JSON document and verifies row count against the recorded
// grid and strict monotonicity of the x column.
CheckOutcome check_sweep_json(const std::string& content);

}  // namespace mirrad::io
