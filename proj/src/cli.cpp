#include "radhf/cli.hpp"

#include "radhf/config.hpp"
#include "radhf/validation.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <fmt/format.h>
#include <fmt/ostream.h>

namespace radhf::cli {

namespace {

using nlohmann::json;

struct Units {
  std::string name = "paper";
  double factor() const { return name == "hartree" ? 2.0 : 1.0; }
};

void write_text(const std::filesystem::path &path, const std::string &text) {
  if (path.has_parent_path())
    std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out)
    throw Error(fmt::format("cannot write {}", path.string()));
  out << text;
}

void print_summary(const ScfState &state, const TheoremReport &report, const Units &units) {
  const double u = units.factor();
  fmt::print("{} (Z = {}, N = {}): {}\n", to_string(state.config.model), state.config.Z,
             report.N, state.message);
  fmt::print("energy [{}]: total {:.10f}  kinetic {:.10f}  nuclear {:.10f}  direct {:.10f}  "
             "exchange {:.10f}\n",
             units.name, u * state.energy.total, u * state.energy.kinetic,
             u * state.energy.nuclear, u * state.energy.direct, u * state.energy.exchange);
  for (std::size_t i = 0; i < state.shells.size(); ++i) {
    const auto &s = state.shells[i];
    const std::string spin =
        state.config.model == Model::uhf ? fmt::format(" {}", to_string(s.spec.spin)) : "";
    fmt::print("  shell {} l={}{}: eps {:.10f}  norm {:.12f}  residual {:.2e}{}\n", i, s.spec.l,
               spin, u * s.epsilon, s.norm, s.residual, s.marginal ? "  (marginal)" : "");
  }
  if (report.evaluated)
    fmt::print("theorem report ({}): {} violation(s)\n", report.regime, report.violations);
  else
    fmt::print("theorem report: not evaluated (state not converged)\n");
  for (const auto &sh : report.shells)
    for (const auto &c : sh.clauses)
      if (!c.holds)
        fmt::print("  VIOLATION shell {}: {} ({})\n", sh.shell, c.name, c.detail);
}

int cmd_solve(const std::string &config_path, const std::optional<std::string> &result_path,
              const std::optional<std::string> &csv_path,
              const std::optional<std::string> &kernel_cache, const Units &units) {
  RunConfig run = load_run_config(config_path);
  if (result_path)
    run.output.result = *result_path;
  if (csv_path)
    run.output.orbitals_csv = *csv_path;
  if (kernel_cache)
    run.scf.kernel_cache = *kernel_cache;

  const ScfState state = solve(run.config, run.grid, run.scf);
  const TheoremReport report = theorem_report(state);
  print_summary(state, report, units);

  if (run.output.result) {
    write_text(*run.output.result, result_document(run, state, report).dump(2) + "\n");
    fmt::print("result written to {}\n", run.output.result->string());
  }
  if (run.output.orbitals_csv) {
    std::ostringstream csv;
    write_orbitals_csv(csv, state);
    write_text(*run.output.orbitals_csv, csv.str());
    fmt::print("orbitals written to {}\n", run.output.orbitals_csv->string());
  }
  return state.converged ? exit_ok : exit_not_converged;
}

int cmd_validate(const std::string &level, const std::optional<std::string> &tamper) {
  validation::SuiteOptions options;
  options.level = level == "full" ? validation::Level::full : validation::Level::quick;
  std::optional<angular::CoefficientTable> tampered;
  if (tamper) {
    int l = 0, lp = 0, k = 0;
    double value = 0.0;
    char c1 = 0, c2 = 0, c3 = 0;
    std::istringstream in(*tamper);
    if (!(in >> l >> c1 >> lp >> c2 >> k >> c3 >> value) || c1 != ',' || c2 != ',' || c3 != ',')
      throw ConfigError("--tamper", "expected l,l',k,value");
    tampered = angular::CoefficientTable::shared(8).with_override(l, lp, k, value);
    options.coefficients = &*tampered;
  }
  options.on_result = [](const validation::CheckResult &r) {
    fmt::print("{} {}{} [{:.2f} s]\n", r.passed ? "PASS" : "FAIL", r.name,
               r.detail.empty() ? "" : ": " + r.detail, r.seconds);
    std::fflush(stdout);
  };
  const auto results = validation::run_suite(options);
  int failed = 0;
  for (const auto &r : results)
    failed += r.passed ? 0 : 1;
  fmt::print("{} of {} checks passed\n", results.size() - failed, results.size());
  return failed == 0 ? exit_ok : exit_validation_failed;
}

std::vector<double> parse_radii(const std::vector<std::string> &values,
                                const std::optional<std::string> &range) {
  std::vector<double> R;
  for (const auto &v : values) {
    std::istringstream in(v);
    double x = 0.0;
    if (!(in >> x) || !(in >> std::ws).eof())
      throw ConfigError("--R", fmt::format("not a number: \"{}\"", v));
    R.push_back(x);
  }
  if (range) {
    double a = 0.0, b = 0.0;
    int count = 0;
    char c1 = 0, c2 = 0;
    std::istringstream in(*range);
    if (!(in >> a >> c1 >> b >> c2 >> count) || c1 != ':' || c2 != ':' || count < 1 || a <= 0 ||
        b < a)
      throw ConfigError("--R-range", "expected start:stop:count with 0 < start <= stop");
    for (int i = 0; i < count; ++i)
      R.push_back(count == 1 ? a : a * std::pow(b / a, static_cast<double>(i) / (count - 1)));
  }
  if (R.empty())
    throw ConfigError("--R", "at least one radius is required");
  return R;
}

int cmd_probe(const std::string &result_path, int shell, const std::vector<double> &R,
              double lambda, std::optional<double> norm_squared,
              const std::optional<std::string> &out_path, const Units &units) {
  std::ifstream in(result_path);
  if (!in)
    throw ConfigError("<result>", fmt::format("cannot read {}", result_path));
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error &e) {
    throw ConfigError("<result>", fmt::format("not valid JSON: {}", e.what()));
  }
  ScfState state;
  try {
    state = state_from_result(doc);
  } catch (const ConfigError &) {
    throw;
  } catch (const Error &e) {
    throw ConfigError("<result>", e.what());
  }
  if (shell < 0 || shell >= static_cast<int>(state.shells.size()))
    throw ConfigError("--shell", fmt::format("must lie in [0, {}]", state.shells.size() - 1));
  if (norm_squared) {
    const double n = state.shells[shell].orbital.norm();
    if (n == 0.0 || *norm_squared < 0.0 || *norm_squared > 1.0)
      throw ConfigError("--norm-squared", "must lie in [0, 1] for an occupied shell");
    state.shells[shell].orbital *= std::sqrt(*norm_squared) / n;
    refresh(state);
  }
  std::vector<ProbePoint> points;
  try {
    points = probe_shell(state, shell, R, lambda);
  } catch (const Error &e) {
    throw ConfigError("--R", e.what());
  }
  std::string table = fmt::format("# R  delta2_coefficient [{}]\n", units.name);
  for (const auto &p : points)
    table += fmt::format("{:.10g} {:.12e}\n", p.R, units.factor() * p.coefficient);
  if (out_path)
    write_text(*out_path, table);
  else
    fmt::print("{}", table);
  return exit_ok;
}

} // namespace

int run(int argc, char **argv) {
  CLI::App app{"Radial Hartree-Fock solver for atoms with prescribed shells"};
  app.require_subcommand(1);
  app.fallthrough();
  Units units;
  app.add_option("--units", units.name, "Energy units for printed values")
      ->check(CLI::IsMember({"paper", "hartree"}))
      ->capture_default_str();

  auto *solve_cmd = app.add_subcommand("solve", "Run the SCF for a JSON configuration");
  std::string config_path;
  std::optional<std::string> result_path, csv_path, kernel_cache;
  solve_cmd->add_option("config", config_path, "Configuration file")->required();
  solve_cmd->add_option("--result", result_path, "Result document path (overrides output.result)");
  solve_cmd->add_option("--csv", csv_path, "Orbital CSV path (overrides output.orbitals_csv)");
  solve_cmd->add_option("--kernel-cache", kernel_cache, "Directory for cached kernel tables");

  auto *validate_cmd = app.add_subcommand("validate", "Run the built-in check suite");
  std::string level = "quick";
  std::optional<std::string> tamper;
  validate_cmd->add_option("--level", level, "quick or full")
      ->check(CLI::IsMember({"quick", "full"}))
      ->capture_default_str();
  validate_cmd->add_option("--tamper", tamper,
                           "Replace one coefficient, l,l',k,value (exercises the suite)");

  auto *probe_cmd = app.add_subcommand("probe", "Second-order coefficients along bump directions");
  std::string stored;
  int shell = 0;
  std::vector<std::string> radii;
  std::optional<std::string> range, probe_out;
  double lambda = 1.0;
  std::optional<double> norm_squared;
  probe_cmd->add_option("result", stored, "Result document written by solve")->required();
  probe_cmd->add_option("--shell", shell, "Shell index (0-based)")->capture_default_str();
  probe_cmd->add_option("--R", radii, "Bump scales R")->delimiter(',');
  probe_cmd->add_option("--R-range", range, "Geometric range start:stop:count");
  probe_cmd->add_option("--lambda", lambda, "Weight of the normalization term")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  probe_cmd->add_option("--norm-squared", norm_squared,
                        "Rescale the shell to this squared norm before probing");
  probe_cmd->add_option("--out", probe_out, "Write the table here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? exit_ok : exit_config_error;
  }

  try {
    if (*solve_cmd)
      return cmd_solve(config_path, result_path, csv_path, kernel_cache, units);
    if (*validate_cmd)
      return cmd_validate(level, tamper);
    return cmd_probe(stored, shell, parse_radii(radii, range), lambda, norm_squared, probe_out,
                     units);
  } catch (const ConfigError &e) {
    fmt::print(stderr, "config error: {}\n", e.what());
    return exit_config_error;
  } catch (const std::exception &e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return exit_config_error;
  }
}

} // namespace radhf::cli
