#include "mirrad/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "CLI11.hpp"
#include "mirrad/emission.hpp"
#include "mirrad/resonance.hpp"
#include "mirrad/serialize.hpp"
#include "mirrad/sideband.hpp"
#include "mirrad/sweeps.hpp"
#include "mirrad/units.hpp"
#include "mirrad/version.hpp"

namespace mirrad::cli {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

struct CommonOpts {
  std::string format = "csv";
  std::string out_path;
  int precision = 17;
  std::string config_path;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--format", opts.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  cmd->add_option("--out", opts.out_path, "Write output to a file instead of stdout");
  cmd->add_option("--precision", opts.precision, "Significant digits in output")
      ->check(CLI::Range(6, 17))
      ->capture_default_str();
  cmd->add_option("--config", opts.config_path,
                  "Read defaults from a flat key=value file");
}

// Flat key=value config mirroring the flag names. Values fill only options
// not already given on the command line, so flags override the file; unknown
// keys are hard errors.
void apply_config(CLI::App* cmd, const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("config: cannot read " + path);
  std::string line;
  int lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    if (line[first] == '#' || line[first] == ';') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos || eq <= first)
      throw std::invalid_argument("config: line " + std::to_string(lineno) +
                                  ": expected key=value");
    auto trim = [](std::string s) {
      const auto a = s.find_first_not_of(" \t\r");
      const auto b = s.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string{} : s.substr(a, b - a + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "config")
      throw std::invalid_argument("config: line " + std::to_string(lineno) +
                                  ": config files cannot nest");
    auto* opt = cmd->get_option_no_throw("--" + key);
    if (opt == nullptr)
      throw std::invalid_argument("config: line " + std::to_string(lineno) +
                                  ": unknown key '" + key + "'");
    if (opt->count() > 0) continue;  // command line wins
    if (opt->get_expected_min() >= 1 && value.empty())
      throw std::invalid_argument("config: line " + std::to_string(lineno) +
                                  ": key '" + key + "' needs a value");
    if (opt->get_expected_max() > 1) {
      // List-valued option: the value is comma-separated like the flag.
      std::stringstream ss(value);
      std::string piece;
      while (std::getline(ss, piece, ',')) opt->add_result(piece);
    } else {
      opt->add_result(value);
    }
    opt->run_callback();
  }
}

void emit(const std::string& text, const CommonOpts& opts, std::ostream& out) {
  if (opts.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(opts.out_path, std::ios::binary);
  if (!f) throw std::invalid_argument("cannot open output file: " + opts.out_path);
  f << text;
}

Method parse_method(std::string name, int default_order) {
  std::replace(name.begin(), name.end(), '_', '-');
  if (name == "perturbative") return Method::perturbative();
  if (name == "closed-form" || name == "closed") return Method::closed_form();
  if (name == "truncated") return Method::truncated(default_order);
  if (name.rfind("truncated-", 0) == 0) {
    try {
      return Method::truncated(std::stoi(name.substr(10)));
    } catch (const std::exception&) {
    }
  }
  throw std::invalid_argument(
      "--method: unknown method '" + name +
      "' (expected perturbative, closed-form, truncated or truncated-<M>)");
}

SweepKind parse_kind(std::string name) {
  std::replace(name.begin(), name.end(), '_', '-');
  if (name == "figure1") return SweepKind::figure1;
  if (name == "figure1-insert") return SweepKind::figure1_insert;
  if (name == "figure2") return SweepKind::figure2;
  if (name == "convergence") return SweepKind::convergence;
  throw std::invalid_argument(
      "sweep kind: expected figure1, figure1-insert, figure2 or convergence");
}

void warn_if_marginal(double theta, double k_dq0, double delta, std::ostream& err) {
  const double s = std::sin(theta);
  const ChannelParams params{s, 1.0 + s + std::max(delta, 0.0)};
  if (drive_strength_marginal(params, k_dq0))
    err << "warning: omega0*dq0 = " << params.omega0 * k_dq0
        << " is marginal for the nonrelativistic expansion\n";
}

}  // namespace

int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Photon emission spectra of an oscillating perfectly reflecting "
               "mirror: coupled-sideband rates and the motion-induced resonance "
               "shift"};
  app.name(kToolName);
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  // rate ------------------------------------------------------------------
  auto* rate_cmd = app.add_subcommand("rate", "Normalized emission rate at one point");
  double rate_theta_deg = 78.0;
  double rate_kdq0 = 0.03;
  double rate_delta = std::numeric_limits<double>::quiet_NaN();
  std::string rate_method = "closed-form";
  int rate_order = 3;
  CommonOpts rate_opts;
  rate_cmd->add_option("--theta", rate_theta_deg, "Emission angle, degrees")
      ->capture_default_str();
  rate_cmd->add_option("--k-dq0", rate_kdq0, "Dimensionless amplitude k*dq0")
      ->capture_default_str();
  rate_cmd->add_option("--delta", rate_delta, "Detuning Omega0/k - 1 - sin(theta)");
  rate_cmd->add_option("--method", rate_method, "perturbative | closed-form | truncated")
      ->capture_default_str();
  rate_cmd->add_option("--order", rate_order, "Truncation half-width for truncated")
      ->capture_default_str();
  add_common(rate_cmd, rate_opts);

  // sweep -----------------------------------------------------------------
  auto* sweep_cmd = app.add_subcommand("sweep", "Grid evaluation behind the figures");
  std::string sweep_kind = "figure1";
  double sweep_theta_deg = 0.0;
  double sweep_kdq0 = 0.0;
  double sweep_min = 0.0, sweep_max = 0.0;
  int sweep_count = 0;
  std::string sweep_spacing;
  std::vector<std::string> sweep_methods;
  std::vector<int> sweep_orders;
  bool sweep_numeric = false;
  int sweep_order = 3;
  CommonOpts sweep_opts;
  sweep_cmd
      ->add_option("kind", sweep_kind,
                   "figure1 | figure1-insert | figure2 | convergence")
      ->required();
  auto* o_theta = sweep_cmd->add_option("--theta", sweep_theta_deg, "Angle, degrees");
  auto* o_kdq0 = sweep_cmd->add_option("--k-dq0", sweep_kdq0, "Amplitude k*dq0");
  auto* o_min = sweep_cmd->add_option("--min", sweep_min, "Grid minimum");
  auto* o_max = sweep_cmd->add_option("--max", sweep_max, "Grid maximum");
  auto* o_count = sweep_cmd->add_option("--count", sweep_count, "Grid point count");
  auto* o_spacing = sweep_cmd->add_option("--spacing", sweep_spacing, "linear | log")
                        ->check(CLI::IsMember({"linear", "log"}));
  auto* o_methods =
      sweep_cmd->add_option("--methods", sweep_methods, "Comma-separated method list")
          ->delimiter(',');
  auto* o_orders =
      sweep_cmd->add_option("--orders", sweep_orders, "Comma-separated truncation orders")
          ->delimiter(',');
  sweep_cmd->add_flag("--numeric", sweep_numeric,
                      "figure2: add the numerically located shift");
  sweep_cmd->add_option("--order", sweep_order, "Default truncation order")
      ->capture_default_str();
  add_common(sweep_cmd, sweep_opts);

  // resonance ---------------------------------------------------------------
  auto* res_cmd = app.add_subcommand("resonance", "Locate the resonance shift delta_s");
  double res_theta_deg = 78.0;
  double res_kdq0 = 0.03;
  bool res_numeric = false;
  int res_order = 3;
  CommonOpts res_opts;
  res_cmd->add_option("--theta", res_theta_deg, "Emission angle, degrees")
      ->capture_default_str();
  res_cmd->add_option("--k-dq0", res_kdq0, "Dimensionless amplitude k*dq0")
      ->capture_default_str();
  res_cmd->add_flag("--numeric", res_numeric, "Also locate the truncated-system peak");
  res_cmd->add_option("--order", res_order, "Truncation half-width (numeric)")
      ->capture_default_str();
  add_common(res_cmd, res_opts);

  // convergence -------------------------------------------------------------
  auto* conv_cmd =
      app.add_subcommand("convergence", "Truncation-order study at one detuning");
  double conv_theta_deg = 78.0;
  double conv_kdq0 = 0.03;
  double conv_delta = std::numeric_limits<double>::quiet_NaN();
  std::vector<int> conv_orders = {1, 3, 6};
  CommonOpts conv_opts;
  conv_cmd->add_option("--theta", conv_theta_deg, "Emission angle, degrees")
      ->capture_default_str();
  conv_cmd->add_option("--k-dq0", conv_kdq0, "Dimensionless amplitude k*dq0")
      ->capture_default_str();
  conv_cmd->add_option("--delta", conv_delta, "Detuning");
  conv_cmd->add_option("--orders", conv_orders, "Comma-separated truncation orders")
      ->delimiter(',');
  add_common(conv_cmd, conv_opts);

  // check ---------------------------------------------------------------
  auto* check_cmd =
      app.add_subcommand("check", "Verify a JSON sweep output (row count, grid)");
  std::string check_path;
  check_cmd->add_option("path", check_path, "JSON file produced by sweep")->required();

  try {
    std::reverse(args.begin(), args.end());  // CLI11 consumes from the back
    app.parse(std::move(args));
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    const std::pair<CLI::App*, CommonOpts*> configurable[] = {{rate_cmd, &rate_opts},
                                                              {sweep_cmd, &sweep_opts},
                                                              {res_cmd, &res_opts},
                                                              {conv_cmd, &conv_opts}};
    for (const auto& [cmd, opts] : configurable)
      if (cmd->parsed() && !opts->config_path.empty())
        apply_config(cmd, opts->config_path);

    if (rate_cmd->parsed()) {
      if (!std::isfinite(rate_delta))
        throw std::invalid_argument("rate: --delta is required (flag or config)");
      EmissionQuery q;
      q.theta = deg_to_rad(rate_theta_deg);
      q.k_dq0 = rate_kdq0;
      q.delta = rate_delta;
      q.method = parse_method(rate_method, rate_order);
      q.validate();
      warn_if_marginal(q.theta, q.k_dq0, q.delta, err);
      const auto sample = rate_direct(q);
      emit(rate_opts.format == "json" ? io::rate_json(sample, rate_opts.precision)
                                      : io::rate_csv(sample, rate_opts.precision),
           rate_opts, out);
      return kExitOk;
    }

    if (sweep_cmd->parsed()) {
      SweepSpec spec = SweepSpec::defaults_for(parse_kind(sweep_kind));
      if (*o_theta) spec.theta = deg_to_rad(sweep_theta_deg);
      if (*o_kdq0) spec.k_dq0 = sweep_kdq0;
      if (*o_min) spec.grid.min = sweep_min;
      if (*o_max) spec.grid.max = sweep_max;
      if (*o_count) spec.grid.count = sweep_count;
      if (*o_spacing)
        spec.grid.spacing =
            sweep_spacing == "log" ? GridSpacing::log : GridSpacing::linear;
      if (*o_methods) {
        spec.methods.clear();
        for (const auto& name : sweep_methods)
          spec.methods.push_back(parse_method(name, sweep_order));
      }
      if (*o_orders) spec.orders = sweep_orders;
      spec.figure2_numeric = sweep_numeric;
      spec.numeric_order = sweep_order;
      spec.validate();
      if (spec.kind != SweepKind::figure2)
        warn_if_marginal(spec.theta, spec.k_dq0, spec.grid.max, err);
      const auto result = run_sweep(spec);
      emit(sweep_opts.format == "json" ? io::sweep_json(result, sweep_opts.precision)
                                       : io::sweep_csv(result, sweep_opts.precision),
           sweep_opts, out);
      return kExitOk;
    }

    if (res_cmd->parsed()) {
      ResonanceResult result;
      if (res_numeric) {
        result = delta_s_numeric(deg_to_rad(res_theta_deg), res_kdq0, res_order);
      } else {
        result.theta = deg_to_rad(res_theta_deg);
        result.k_dq0 = res_kdq0;
        result.delta_s_analytic = delta_s_analytic(result.theta, res_kdq0);
      }
      emit(res_opts.format == "json" ? io::resonance_json(result, res_opts.precision)
                                     : io::resonance_csv(result, res_opts.precision),
           res_opts, out);
      return kExitOk;
    }

    if (conv_cmd->parsed()) {
      if (!std::isfinite(conv_delta))
        throw std::invalid_argument("convergence: --delta is required (flag or config)");
      const auto report = convergence_report(deg_to_rad(conv_theta_deg), conv_kdq0,
                                             conv_delta, conv_orders);
      emit(conv_opts.format == "json"
               ? io::convergence_json(report, conv_opts.precision)
               : io::convergence_csv(report, conv_opts.precision),
           conv_opts, out);
      return kExitOk;
    }

    if (check_cmd->parsed()) {
      std::ifstream f(check_path, std::ios::binary);
      if (!f) {
        err << "error: cannot read " << check_path << '\n';
        return kExitUsage;
      }
      std::ostringstream buf;
      buf << f.rdbuf();
      const auto outcome = io::check_sweep_json(buf.str());
      if (!outcome.parse_ok) {
        err << "error: " << outcome.message << '\n';
        return kExitUsage;
      }
      if (!outcome.ok) {
        err << "check failed: " << outcome.message << '\n';
        return kExitNumerical;
      }
      out << "check " << outcome.message << '\n';
      return kExitOk;
    }
  } catch (const CLI::Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const SingularSystemError& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const NoPeakError& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  err << "error: no subcommand given\n";
  return kExitUsage;
}

}  // namespace mirrad::cli
