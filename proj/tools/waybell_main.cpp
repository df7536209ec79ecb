// waybell: Bell-test response models under an angular-momentum conservation
// constraint, with an exact two-qubit oracle, Monte-Carlo sampling, CHSH
// scanning and delta-L calibration.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "waybell/bell.hpp"
#include "waybell/fitting.hpp"
#include "waybell/lhv.hpp"
#include "waybell/quantum.hpp"
#include "waybell/sampler.hpp"
#include "waybell/table.hpp"

namespace {

namespace lhv = waybell::lhv;
namespace bell = waybell::bell;
namespace fitting = waybell::fitting;
namespace quantum = waybell::quantum;
namespace sampler = waybell::sampler;
namespace io = waybell::io;

using nlohmann::ordered_json;

constexpr double kPi = std::numbers::pi;
constexpr const char* kVersion = "0.1.0";
constexpr double kStorz2023 = 2.0747;

void require_domain(bool condition, const std::string& message) {
  if (!condition) {
    throw std::domain_error(message);
  }
}

std::vector<double> parse_double_list(const std::string& text, const std::string& flag) {
  std::vector<double> values;
  std::istringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    try {
      std::size_t used = 0;
      values.push_back(std::stod(item, &used));
      while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) {
        ++used;
      }
      if (used != item.size()) {
        throw std::invalid_argument(item);
      }
    } catch (const std::exception&) {
      throw std::invalid_argument(flag + ": malformed number '" + item + "'");
    }
  }
  if (values.empty()) {
    throw std::invalid_argument(flag + ": expected at least one value");
  }
  return values;
}

double parse_single_double(const std::string& text, const std::string& flag) {
  const std::vector<double> values = parse_double_list(text, flag);
  if (values.size() != 1) {
    throw std::invalid_argument(flag + ": expected exactly one value");
  }
  return values[0];
}

quantum::StateKind parse_state(const std::string& name) {
  if (name == "singlet") {
    return quantum::StateKind::singlet;
  }
  if (name == "psiplus") {
    return quantum::StateKind::triplet_psi_plus;
  }
  if (name == "phiminus") {
    return quantum::StateKind::triplet_phi_minus;
  }
  throw std::invalid_argument("unknown state '" + name + "'");
}

const char* classification_name(bell::Classification c) {
  switch (c) {
    case bell::Classification::classical:
      return "classical";
    case bell::Classification::quantum:
      return "quantum";
    case bell::Classification::supra_quantum:
      return "supra-quantum";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------
// Shared option plumbing

struct CommonOpts {
  std::string out;
  std::string format;
  std::string config;
  std::string meta;
};

struct CurveOpts : CommonOpts {
  std::string state = "singlet";
  std::string delta_l;
  int theta_points = 201;
};

struct ChshOpts : CommonOpts {
  std::string model = "quantum";
  std::string state;
  std::string delta_l;
  std::string settings;
  int grid_steps = 32;
  int refine = 50;
};

struct FitOpts : CommonOpts {
  std::string objective = "zero_mean_signed";
  int grid_size = 1000;
};

struct McOpts : CommonOpts {
  std::string model = "base";
  std::string state;
  std::string delta_l;
  double theta = kPi / 2.0;
  std::uint64_t seed = 0;
  std::uint64_t samples = 1'000'000;
};

struct BoundOpts : CommonOpts {
  std::string delta_l;
  int theta_points = 181;
};

struct SingleOpts : CommonOpts {
  int theta_points = 181;
};

void add_common(CLI::App* cmd, CommonOpts& opts, const std::string& default_format,
                const std::vector<std::string>& allowed_formats) {
  cmd->add_option("--out", opts.out, "Output path (stdout when omitted)");
  opts.format = default_format;
  cmd->add_option("--format", opts.format, "Output format")
      ->check(CLI::IsMember(allowed_formats));
  cmd->add_option("--config", opts.config, "Flat key=value config file");
  cmd->add_option("--meta", opts.meta, "Write a JSON metadata sidecar (timestamps live here)");
}

// Config pre-pass: flags from a flat key=value file are spliced in directly
// after the subcommand name, so explicit command-line flags take precedence
// via the take-last policy.
std::vector<std::string> effective_args(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  std::string config_path;
  for (std::size_t i = 1; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      config_path = args[i + 1];
    } else if (args[i].rfind("--config=", 0) == 0) {
      config_path = args[i].substr(9);
    }
  }
  if (config_path.empty() || args.size() < 2 || args[1].empty() || args[1][0] == '-') {
    return args;
  }

  std::ifstream config(config_path);
  if (!config) {
    throw io::IoError("cannot read config file '" + config_path + "'");
  }
  std::vector<std::string> spliced(args.begin(), args.begin() + 2);
  std::string line;
  int line_number = 0;
  while (std::getline(config, line)) {
    ++line_number;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') {
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos || eq <= first) {
      throw std::invalid_argument("config line " + std::to_string(line_number) +
                                  ": expected key=value");
    }
    const auto key_end = line.find_last_not_of(" \t\r", eq - 1);
    std::string key = line.substr(first, key_end - first + 1);
    std::string value = line.substr(eq + 1);
    const auto value_begin = value.find_first_not_of(" \t\r");
    const auto value_end = value.find_last_not_of(" \t\r");
    value = value_begin == std::string::npos
                ? std::string{}
                : value.substr(value_begin, value_end - value_begin + 1);
    spliced.push_back("--" + key + "=" + value);
  }
  spliced.insert(spliced.end(), args.begin() + 2, args.end());
  return spliced;
}

void emit(const CommonOpts& opts, const std::string& payload) {
  if (opts.out.empty()) {
    std::cout << payload;
  } else {
    io::write_file(opts.out, payload);
  }
}

void write_meta(const CommonOpts& opts, const std::vector<std::string>& args) {
  if (opts.meta.empty()) {
    return;
  }
  const auto now = std::chrono::system_clock::now().time_since_epoch();
  ordered_json meta;
  meta["tool"] = "waybell";
  meta["version"] = kVersion;
  meta["command"] = args;
  meta["generated_at_unix_ms"] =
      std::chrono::duration_cast<std::chrono::milliseconds>(now).count();
  io::write_file(opts.meta, meta.dump(2) + "\n");
}

// ---------------------------------------------------------------------------
// Model plumbing shared by chsh/scan

struct ModelChoice {
  bell::CorrelationFn correlation;
  std::string label;
};

ModelChoice make_correlation(const std::string& model, const std::string& state,
                             const std::string& delta_l_text) {
  if (model == "quantum") {
    return {bell::quantum_singlet_correlation(), "quantum"};
  }
  if (model == "base") {
    return {bell::from_theta_profile(lhv::base_profile()), "base"};
  }
  if (model == "way_singlet") {
    const double delta_L =
        delta_l_text.empty() ? 0.77 : parse_single_double(delta_l_text, "--delta-l");
    require_domain(delta_L > lhv::kMinSingletDeltaL,
                   "--delta-l: singlet response needs delta_L > 1/pi");
    return {bell::from_theta_profile(lhv::way_singlet_profile(delta_L)),
            "way_singlet_dL" + io::format_g12(delta_L)};
  }
  if (model == "way_triplet") {
    const double delta_L_xi =
        delta_l_text.empty() ? 1.0 : parse_single_double(delta_l_text, "--delta-l");
    require_domain(delta_L_xi > 0.0, "--delta-l: triplet response needs delta_L_xi > 0");
    const quantum::StateKind kind = parse_state(state.empty() ? "psiplus" : state);
    if (kind == quantum::StateKind::singlet) {
      throw std::invalid_argument("way_triplet requires --state psiplus or phiminus");
    }
    const std::string branch =
        kind == quantum::StateKind::triplet_psi_plus ? "psiplus" : "phiminus";
    return {bell::from_theta_profile(lhv::way_triplet_profile(delta_L_xi, kind)),
            "way_" + branch + "_dLxi" + io::format_g12(delta_L_xi)};
  }
  throw std::invalid_argument("unknown model '" + model + "'");
}

ordered_json chsh_json(const bell::ChshResult& result) {
  ordered_json payload;
  payload["s_value"] = io::round12(result.s_value);
  payload["settings"] = {{"a", io::round12(result.settings.a)},
                         {"a_prime", io::round12(result.settings.a_prime)},
                         {"b", io::round12(result.settings.b)},
                         {"b_prime", io::round12(result.settings.b_prime)}};
  payload["per_term"] = {io::round12(result.per_term[0]), io::round12(result.per_term[1]),
                         io::round12(result.per_term[2]), io::round12(result.per_term[3])};
  payload["classification"] = classification_name(result.classification);
  payload["reference"] = {{"classical", bell::kClassicalBound},
                          {"tsirelson", io::round12(bell::kTsirelsonBound)},
                          {"storz_2023", kStorz2023}};
  return payload;
}

std::string render_table(const io::CurveTable& table, const std::string& format) {
  return format == "json" ? io::to_json(table) : io::to_csv(table);
}

// ---------------------------------------------------------------------------
// Subcommand bodies

void run_curve(const CurveOpts& opts) {
  require_domain(opts.theta_points >= 2, "--theta-points: need at least 2 points");
  std::vector<double> deltas = opts.delta_l.empty()
                                   ? std::vector<double>{0.5, 0.77, 1.0, 2.0, 10.0}
                                   : parse_double_list(opts.delta_l, "--delta-l");

  struct Column {
    std::string label;
    std::function<double(double)> value;  // of full-period theta
  };
  std::vector<Column> columns;
  columns.push_back({"E_qm", [](double theta) {
                       return quantum::qm_correlation(quantum::StateKind::singlet, 0.0, theta);
                     }});
  columns.push_back({"E_base", [profile = lhv::base_profile()](double theta) {
                       return lhv::extend_symmetry(profile, theta);
                     }});

  const bool all = opts.state == "all";
  if (all || opts.state == "singlet") {
    for (double delta_L : deltas) {
      require_domain(delta_L > lhv::kMinSingletDeltaL,
                     "--delta-l: singlet response needs delta_L > 1/pi");
      columns.push_back({"E_way_singlet_dL" + io::format_g12(delta_L),
                         [profile = lhv::way_singlet_profile(delta_L)](double theta) {
                           return lhv::extend_symmetry(profile, theta);
                         }});
    }
  }
  const auto add_triplet = [&](quantum::StateKind kind, const std::string& branch) {
    for (double delta_L_xi : deltas) {
      require_domain(delta_L_xi > 0.0, "--delta-l: triplet response needs delta_L_xi > 0");
      columns.push_back({"E_way_" + branch + "_dLxi" + io::format_g12(delta_L_xi),
                         [profile = lhv::way_triplet_profile(delta_L_xi, kind)](double theta) {
                           return lhv::extend_symmetry(profile, theta);
                         }});
    }
  };
  if (all || opts.state == "psiplus") {
    add_triplet(quantum::StateKind::triplet_psi_plus, "psiplus");
  }
  if (all || opts.state == "phiminus") {
    add_triplet(quantum::StateKind::triplet_phi_minus, "phiminus");
  }

  io::CurveTable table;
  table.columns.push_back("theta");
  for (const Column& column : columns) {
    table.columns.push_back(column.label);
  }
  const double step = 2.0 * kPi / (opts.theta_points - 1);
  for (int i = 0; i < opts.theta_points; ++i) {
    const double theta = std::min(i * step, 2.0 * kPi);
    std::vector<double> row;
    row.reserve(columns.size() + 1);
    row.push_back(theta);
    for (const Column& column : columns) {
      row.push_back(column.value(theta));
    }
    table.rows.push_back(std::move(row));
  }
  emit(opts, render_table(table, opts.format));
}

void run_chsh(const ChshOpts& opts) {
  const ModelChoice choice = make_correlation(opts.model, opts.state, opts.delta_l);
  bell::ChshSettings settings = bell::ChshSettings::standard();
  if (!opts.settings.empty()) {
    const std::vector<double> values = parse_double_list(opts.settings, "--settings");
    if (values.size() != 4) {
      throw std::invalid_argument("--settings: expected a,a_prime,b,b_prime");
    }
    settings = {values[0], values[1], values[2], values[3]};
  }
  emit(opts, chsh_json(bell::chsh_s(choice.correlation, settings)).dump(2) + "\n");
}

void run_scan(const ChshOpts& opts) {
  require_domain(opts.grid_steps >= 8, "--grid-steps: need at least 8 steps per angle");
  require_domain(opts.refine >= 0, "--refine: must be nonnegative");
  const ModelChoice choice = make_correlation(opts.model, opts.state, opts.delta_l);
  emit(opts,
       chsh_json(bell::max_chsh(choice.correlation, opts.grid_steps, opts.refine)).dump(2) +
           "\n");
}

void run_fit(const FitOpts& opts) {
  require_domain(opts.grid_size >= 100, "--theta-points: fit grid needs at least 100 points");
  const fitting::Objective objective = opts.objective == "min_mean_abs"
                                           ? fitting::Objective::min_mean_abs
                                           : fitting::Objective::zero_mean_signed;
  const fitting::FitResult result = fitting::fit_deltaL(opts.grid_size, objective);
  ordered_json payload;
  payload["objective"] = opts.objective;
  payload["delta_L_star"] = io::round12(result.delta_L_star);
  payload["mean_signed_error"] = io::round12(result.mean_signed_error);
  payload["mean_abs_error"] = io::round12(result.mean_abs_error);
  payload["max_abs_error"] = io::round12(result.max_abs_error);
  payload["argmax_theta"] = io::round12(result.argmax_theta);
  payload["grid_size"] = result.grid_size;
  emit(opts, payload.dump(2) + "\n");
}

void run_mc(const McOpts& opts) {
  require_domain(opts.theta >= 0.0 && opts.theta <= kPi, "--theta: must lie in [0, pi]");
  require_domain(opts.samples > 0, "--samples: must be positive");

  sampler::Model model = sampler::Model::base;
  lhv::WayParams params;
  if (opts.model == "base") {
    model = sampler::Model::base;
  } else if (opts.model == "way_singlet") {
    model = sampler::Model::way_singlet;
    params.kind = quantum::StateKind::singlet;
    params.delta_L = opts.delta_l.empty() ? 0.77 : parse_single_double(opts.delta_l, "--delta-l");
    require_domain(params.delta_L > lhv::kMinSingletDeltaL,
                   "--delta-l: singlet response needs delta_L > 1/pi");
  } else if (opts.model == "way_triplet") {
    model = sampler::Model::way_triplet;
    params.kind = parse_state(opts.state.empty() ? "psiplus" : opts.state);
    if (params.kind == quantum::StateKind::singlet) {
      throw std::invalid_argument("way_triplet requires --state psiplus or phiminus");
    }
    params.delta_L = opts.delta_l.empty() ? 1.0 : parse_single_double(opts.delta_l, "--delta-l");
    require_domain(params.delta_L > 0.0, "--delta-l: triplet response needs delta_L_xi > 0");
  } else {
    throw std::invalid_argument("unknown model '" + opts.model + "'");
  }

  sampler::SamplerConfig config;
  config.seed = opts.seed;
  config.n_samples = opts.samples;
  const sampler::CorrelationEstimate estimate =
      sampler::estimate_correlation(model, opts.theta, params, config);

  ordered_json payload;
  payload["mean"] = io::round12(estimate.mean);
  payload["std_error"] = io::round12(estimate.std_error);
  payload["n_accepted"] = estimate.n_accepted;
  payload["n_rejected"] = estimate.n_rejected;
  payload["seed"] = estimate.seed;
  emit(opts, payload.dump(2) + "\n");
}

void run_bound(const BoundOpts& opts) {
  require_domain(opts.theta_points >= 2, "--theta-points: need at least 2 points");
  const double delta_L =
      opts.delta_l.empty() ? 0.5 : parse_single_double(opts.delta_l, "--delta-l");
  require_domain(delta_L > 0.0, "--delta-l: bound needs delta_L > 0");

  io::CurveTable table;
  table.columns = {"theta", "way_bound", "numerator_check_delta"};
  const double step = kPi / (opts.theta_points - 1);
  for (int i = 0; i < opts.theta_points; ++i) {
    const double theta = std::min(i * step, kPi);
    const double numerator = quantum::way_numerator(quantum::StateKind::singlet, 0.0, theta);
    const double check = std::abs(numerator - std::abs(std::sin(theta)));
    table.rows.push_back({theta, lhv::way_bound(theta, delta_L), check});
  }
  emit(opts, render_table(table, opts.format));
}

void run_single(const SingleOpts& opts) {
  require_domain(opts.theta_points >= 2, "--theta-points: need at least 2 points");
  io::CurveTable table;
  table.columns = {"alpha", "delta_L_exact"};
  for (const auto& [alpha, delta_L] : fitting::exact_deltaL_curve(opts.theta_points)) {
    table.rows.push_back({alpha, delta_L});
  }
  emit(opts, render_table(table, opts.format));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bell-test correlations constrained by angular-momentum conservation"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  const std::vector<std::string> table_formats{"csv", "json"};
  const std::vector<std::string> json_only{"json"};

  CurveOpts curve_opts;
  CLI::App* curve = app.add_subcommand("curve", "Emit response curves over theta in [0, 2 pi]");
  curve->add_option("--state", curve_opts.state, "singlet|psiplus|phiminus|all")
      ->check(CLI::IsMember({"singlet", "psiplus", "phiminus", "all"}));
  curve->add_option("--delta-l", curve_opts.delta_l,
                    "Comma-separated delta_L values (default 0.5,0.77,1,2,10)");
  curve->add_option("--theta-points", curve_opts.theta_points, "Grid points over [0, 2 pi]");
  add_common(curve, curve_opts, "csv", table_formats);

  ChshOpts chsh_opts;
  CLI::App* chsh = app.add_subcommand("chsh", "CHSH S value at fixed detector settings");
  chsh->add_option("--model", chsh_opts.model, "quantum|base|way_singlet|way_triplet")
      ->check(CLI::IsMember({"quantum", "base", "way_singlet", "way_triplet"}));
  chsh->add_option("--state", chsh_opts.state, "Triplet branch: psiplus|phiminus");
  chsh->add_option("--delta-l", chsh_opts.delta_l, "Model delta_L (way models)");
  chsh->add_option("--settings", chsh_opts.settings, "a,a_prime,b,b_prime (default standard)");
  add_common(chsh, chsh_opts, "json", json_only);

  ChshOpts scan_opts;
  CLI::App* scan = app.add_subcommand("scan", "Search detector settings for the maximal S");
  scan->add_option("--model", scan_opts.model, "quantum|base|way_singlet|way_triplet")
      ->check(CLI::IsMember({"quantum", "base", "way_singlet", "way_triplet"}));
  scan->add_option("--state", scan_opts.state, "Triplet branch: psiplus|phiminus");
  scan->add_option("--delta-l", scan_opts.delta_l, "Model delta_L (way models)");
  scan->add_option("--grid-steps", scan_opts.grid_steps, "Coarse grid steps per angle");
  scan->add_option("--refine", scan_opts.refine, "Coordinate-descent iterations");
  add_common(scan, scan_opts, "json", json_only);

  FitOpts fit_opts;
  CLI::App* fit = app.add_subcommand("fit", "Calibrate delta_L against the quantum curve");
  fit->add_option("--objective", fit_opts.objective, "zero_mean_signed|min_mean_abs")
      ->check(CLI::IsMember({"zero_mean_signed", "min_mean_abs"}));
  fit->add_option("--theta-points", fit_opts.grid_size, "Fit grid points over [0, pi]");
  add_common(fit, fit_opts, "json", json_only);

  McOpts mc_opts;
  CLI::App* mc = app.add_subcommand("mc", "Monte-Carlo correlation estimate at one theta");
  mc->add_option("--model", mc_opts.model, "base|way_singlet|way_triplet")
      ->check(CLI::IsMember({"base", "way_singlet", "way_triplet"}));
  mc->add_option("--state", mc_opts.state, "Triplet branch: psiplus|phiminus");
  mc->add_option("--delta-l", mc_opts.delta_l, "Model delta_L (way models)");
  mc->add_option("--theta", mc_opts.theta, "Detector angle difference in [0, pi]");
  mc->add_option("--seed", mc_opts.seed, "RNG seed");
  mc->add_option("--samples", mc_opts.samples, "Number of hidden-variable draws");
  add_common(mc, mc_opts, "json", json_only);

  BoundOpts bound_opts;
  CLI::App* bound = app.add_subcommand(
      "bound", "Squared-deviation bound table with numerator verification");
  bound->add_option("--delta-l", bound_opts.delta_l, "Dispersion delta_L (default 0.5)");
  bound->add_option("--theta-points", bound_opts.theta_points, "Grid points over [0, pi]");
  add_common(bound, bound_opts, "csv", table_formats);

  SingleOpts single_opts;
  CLI::App* single = app.add_subcommand(
      "single", "Exact per-angle delta_L for the single-spin model");
  single->add_option("--theta-points", single_opts.theta_points, "Grid points over (0, pi)");
  add_common(single, single_opts, "csv", table_formats);

  for (CLI::App* sub : {curve, chsh, scan, fit, mc, bound, single}) {
    for (CLI::Option* option : sub->get_options()) {
      option->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    }
  }

  std::vector<std::string> args;
  try {
    args = effective_args(argc, argv);
  } catch (const io::IoError& error) {
    std::cerr << "error: " << error.what() << "\n";
    return 4;
  } catch (const std::invalid_argument& error) {
    std::cerr << "error: " << error.what() << "\n";
    return 2;
  }

  std::vector<const char*> arg_ptrs;
  arg_ptrs.reserve(args.size());
  for (const std::string& arg : args) {
    arg_ptrs.push_back(arg.c_str());
  }

  try {
    app.parse(static_cast<int>(arg_ptrs.size()), arg_ptrs.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (curve->parsed()) {
      run_curve(curve_opts);
      write_meta(curve_opts, args);
    } else if (chsh->parsed()) {
      run_chsh(chsh_opts);
      write_meta(chsh_opts, args);
    } else if (scan->parsed()) {
      run_scan(scan_opts);
      write_meta(scan_opts, args);
    } else if (fit->parsed()) {
      run_fit(fit_opts);
      write_meta(fit_opts, args);
    } else if (mc->parsed()) {
      run_mc(mc_opts);
      write_meta(mc_opts, args);
    } else if (bound->parsed()) {
      run_bound(bound_opts);
      write_meta(bound_opts, args);
    } else if (single->parsed()) {
      run_single(single_opts);
      write_meta(single_opts, args);
    }
    return 0;
  } catch (const io::IoError& error) {
    std::cerr << "error: " << error.what() << "\n";
    return 4;
  } catch (const std::domain_error& error) {
    std::cerr << "error: " << error.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& error) {
    std::cerr << "error: " << error.what() << "\n";
    return 2;
  } catch (const std::exception& error) {
    std::cerr << "error: " << error.what() << "\n";
    return 1;
  }
}
