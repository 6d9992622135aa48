#include "mirrad/serialize.hpp"

#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "mirrad/units.hpp"
#include "mirrad/version.hpp"

namespace mirrad::io {

namespace {

using ordered_json = nlohmann::ordered_json;

// Flag column name for a value column; analytic figure-2 values carry none.
bool flag_column_name(const std::string& column, std::string& out) {
  if (column.rfind("rho_", 0) == 0) {
    out = "flag_" + column.substr(4);
    return true;
  }
  if (column == "delta_s_numeric") {
    out = "flag_numeric";
    return true;
  }
  return false;
}

std::string spacing_name(GridSpacing s) {
  return s == GridSpacing::linear ? "linear" : "log";
}

ordered_json sweep_meta_json(const SweepResult& r, int precision) {
  ordered_json meta;
  meta["tool"] = r.meta.tool;
  meta["version"] = r.meta.version;
  meta["command"] = "sweep";
  meta["kind"] = kind_name(r.spec.kind);
  meta["deterministic"] = r.meta.deterministic;
  meta["wall_ms"] = r.meta.wall_ms;
  meta["theta_deg"] = round_to_precision(rad_to_deg(r.spec.theta), precision);
  meta["k_dq0"] = round_to_precision(r.spec.k_dq0, precision);
  meta["grid"] = {{"min", round_to_precision(r.spec.grid.min, precision)},
                  {"max", round_to_precision(r.spec.grid.max, precision)},
                  {"count", r.spec.grid.count},
                  {"spacing", spacing_name(r.spec.grid.spacing)}};
  meta["x_label"] = r.x_label;
  meta["columns"] = r.columns;
  meta["precision"] = precision;
  return meta;
}

ordered_json tool_meta(const char* command) {
  ordered_json meta;
  meta["tool"] = kToolName;
  meta["version"] = kVersion;
  meta["command"] = command;
  return meta;
}

ordered_json json_number(double v, int precision) {
  if (!std::isfinite(v)) return nullptr;
  return round_to_precision(v, precision);
}

}  // namespace

std::string format_double(double v, int precision) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general,
                           precision);
  return std::string(buf, res.ptr);
}

double round_to_precision(double v, int precision) {
  if (!std::isfinite(v)) return v;
  const std::string s = format_double(v, precision);
  double out = v;
  std::from_chars(s.data(), s.data() + s.size(), out);
  return out;
}

std::string kind_name(SweepKind kind) {
  switch (kind) {
    case SweepKind::figure1:
      return "figure1";
    case SweepKind::figure1_insert:
      return "figure1_insert";
    case SweepKind::figure2:
      return "figure2";
    case SweepKind::convergence:
      return "convergence";
  }
  return "unknown";
}

std::string sweep_csv(const SweepResult& r, int precision) {
  std::ostringstream out;
  out << r.x_label;
  for (const auto& c : r.columns) out << ',' << c;
  std::string flag;
  for (const auto& c : r.columns)
    if (flag_column_name(c, flag)) out << ',' << flag;
  out << '\n';
  for (const auto& row : r.rows) {
    out << format_double(row.x, precision);
    for (double v : row.values) out << ',' << format_double(v, precision);
    for (std::size_t i = 0; i < r.columns.size(); ++i)
      if (flag_column_name(r.columns[i], flag))
        out << ',' << (row.flags[i] ? '1' : '0');
    out << '\n';
  }
  return out.str();
}

std::string rate_csv(const EmissionSample& s, int precision) {
  std::ostringstream out;
  out << "theta_deg,k_dq0,delta,method,rho,singular\n";
  out << format_double(rad_to_deg(s.query.theta), precision) << ','
      << format_double(s.query.k_dq0, precision) << ','
      << format_double(s.query.delta, precision) << ',' << s.query.method.label()
      << ',' << format_double(s.rho, precision) << ',' << (s.singular ? '1' : '0')
      << '\n';
  return out.str();
}

std::string resonance_csv(const ResonanceResult& r, int precision) {
  std::ostringstream out;
  out << "theta_deg,k_dq0,delta_s_analytic,delta_s_numeric,bracket_lo,bracket_hi,"
         "iterations\n";
  out << format_double(rad_to_deg(r.theta), precision) << ','
      << format_double(r.k_dq0, precision) << ','
      << format_double(r.delta_s_analytic, precision) << ',';
  if (r.delta_s_numeric) {
    out << format_double(*r.delta_s_numeric, precision) << ','
        << format_double(r.bracket_lo, precision) << ','
        << format_double(r.bracket_hi, precision) << ',';
  } else {
    out << ",,,";
  }
  out << r.iterations << '\n';
  return out.str();
}

std::string convergence_csv(const ConvergenceReport& r, int precision) {
  std::ostringstream out;
  out << "order,g1_re,g1_im,rho,residual,converged\n";
  for (const auto& row : r.rows) {
    const bool conv = r.converged_order && *r.converged_order == row.order;
    out << row.order << ',' << format_double(row.g1.real(), precision) << ','
        << format_double(row.g1.imag(), precision) << ','
        << format_double(row.rho, precision) << ','
        << format_double(row.residual, precision) << ',' << (conv ? '1' : '0')
        << '\n';
  }
  return out.str();
}

std::string sweep_json(const SweepResult& r, int precision) {
  ordered_json doc;
  doc["meta"] = sweep_meta_json(r, precision);
  ordered_json rows = ordered_json::array();
  std::string flag;
  for (const auto& row : r.rows) {
    ordered_json jr;
    jr[r.x_label] = json_number(row.x, precision);
    for (std::size_t i = 0; i < r.columns.size(); ++i)
      jr[r.columns[i]] = json_number(row.values[i], precision);
    for (std::size_t i = 0; i < r.columns.size(); ++i)
      if (flag_column_name(r.columns[i], flag)) jr[flag] = static_cast<bool>(row.flags[i]);
    jr["nudged"] = row.nudged;
    rows.push_back(std::move(jr));
  }
  doc["rows"] = std::move(rows);
  return doc.dump(2) + "\n";
}

std::string rate_json(const EmissionSample& s, int precision) {
  ordered_json doc;
  doc["meta"] = tool_meta("rate");
  ordered_json row;
  row["theta_deg"] = json_number(rad_to_deg(s.query.theta), precision);
  row["k_dq0"] = json_number(s.query.k_dq0, precision);
  row["delta"] = json_number(s.query.delta, precision);
  row["method"] = s.query.method.label();
  row["rho"] = json_number(s.rho, precision);
  row["singular"] = s.singular;
  doc["rows"] = ordered_json::array({row});
  return doc.dump(2) + "\n";
}

std::string resonance_json(const ResonanceResult& r, int precision) {
  ordered_json doc;
  doc["meta"] = tool_meta("resonance");
  ordered_json row;
  row["theta_deg"] = json_number(rad_to_deg(r.theta), precision);
  row["k_dq0"] = json_number(r.k_dq0, precision);
  row["delta_s_analytic"] = json_number(r.delta_s_analytic, precision);
  if (r.delta_s_numeric) {
    row["delta_s_numeric"] = json_number(*r.delta_s_numeric, precision);
    row["bracket_lo"] = json_number(r.bracket_lo, precision);
    row["bracket_hi"] = json_number(r.bracket_hi, precision);
  }
  row["iterations"] = r.iterations;
  doc["rows"] = ordered_json::array({row});
  return doc.dump(2) + "\n";
}

std::string convergence_json(const ConvergenceReport& r, int precision) {
  ordered_json doc;
  auto meta = tool_meta("convergence");
  meta["theta_deg"] = json_number(rad_to_deg(r.theta), precision);
  meta["k_dq0"] = json_number(r.k_dq0, precision);
  meta["delta"] = json_number(r.delta, precision);
  if (r.converged_order) meta["converged_order"] = *r.converged_order;
  doc["meta"] = std::move(meta);
  ordered_json rows = ordered_json::array();
  for (const auto& row : r.rows) {
    ordered_json jr;
    jr["order"] = row.order;
    jr["g1_re"] = json_number(row.g1.real(), precision);
    jr["g1_im"] = json_number(row.g1.imag(), precision);
    jr["rho"] = json_number(row.rho, precision);
    jr["residual"] = json_number(row.residual, precision);
    rows.push_back(std::move(jr));
  }
  doc["rows"] = std::move(rows);
  return doc.dump(2) + "\n";
}

CheckOutcome check_sweep_json(const std::string& content) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(content);
  } catch (const std::exception& e) {
    return {false, false, std::string("not valid JSON: ") + e.what()};
  }
  if (!doc.is_object() || !doc.contains("meta") || !doc.contains("rows"))
    return {false, false, "missing meta/rows keys"};
  const auto& meta = doc["meta"];
  if (!meta.contains("kind") || !meta.contains("grid") || !meta.contains("x_label"))
    return {false, false, "meta lacks kind/grid/x_label; not a sweep document"};
  const auto& rows = doc["rows"];
  if (!rows.is_array()) return {false, false, "rows is not an array"};

  const auto count = meta["grid"].value("count", -1);
  if (static_cast<int>(rows.size()) != count) {
    std::ostringstream msg;
    msg << "row count " << rows.size() << " != grid count " << count;
    return {true, false, msg.str()};
  }
  const std::string x_label = meta["x_label"].get<std::string>();
  double prev = 0.0;
  bool have_prev = false;
  for (const auto& row : rows) {
    if (!row.contains(x_label))
      return {true, false, "row lacks x column '" + x_label + "'"};
    const double x = row[x_label].get<double>();
    if (have_prev && !(x > prev))
      return {true, false, "grid is not strictly increasing"};
    prev = x;
    have_prev = true;
  }
  std::ostringstream msg;
  msg << "ok: " << rows.size() << " rows, monotone grid";
  return {true, true, msg.str()};
}

}  // namespace mirrad::io
