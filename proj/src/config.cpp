#include "radhf/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>

namespace radhf {

using nlohmann::json;

namespace {

// Reads the members of one JSON object and rejects keys nobody asked for.
class ObjectReader {
public:
  ObjectReader(const json &node, std::string path) : node_(node), path_(std::move(path)) {
    if (!node_.is_object())
      throw ConfigError(path_.empty() ? "<root>" : path_, "must be an object");
  }

  std::string field(const std::string &key) const {
    return path_.empty() ? key : path_ + "." + key;
  }

  const json *find(const std::string &key) {
    seen_.insert(key);
    const auto it = node_.find(key);
    return it == node_.end() || it->is_null() ? nullptr : &*it;
  }

  const json &require(const std::string &key) {
    const json *v = find(key);
    if (!v)
      throw ConfigError(field(key), "is required");
    return *v;
  }

  double number(const std::string &key, double fallback) {
    const json *v = find(key);
    return v ? as_number(*v, field(key)) : fallback;
  }

  int integer(const std::string &key, int fallback) {
    const json *v = find(key);
    return v ? as_integer(*v, field(key)) : fallback;
  }

  std::optional<std::string> text(const std::string &key) {
    const json *v = find(key);
    if (!v)
      return std::nullopt;
    if (!v->is_string())
      throw ConfigError(field(key), "must be a string");
    return v->get<std::string>();
  }

  void finish() const {
    for (const auto &[key, value] : node_.items())
      if (!seen_.count(key))
        throw ConfigError(field(key), "unknown key");
  }

  static double as_number(const json &v, const std::string &field) {
    if (!v.is_number())
      throw ConfigError(field, "must be a number");
    const double x = v.get<double>();
    if (!std::isfinite(x))
      throw ConfigError(field, "must be finite");
    return x;
  }

  static int as_integer(const json &v, const std::string &field) {
    if (v.is_number_integer())
      return v.get<int>();
    if (v.is_number_float()) {
      const double x = v.get<double>();
      if (std::isfinite(x) && x == std::floor(x) && std::fabs(x) < 1e9)
        return static_cast<int>(x);
    }
    throw ConfigError(field, "must be an integer");
  }

private:
  const json &node_;
  std::string path_;
  std::set<std::string> seen_;
};

Spin spin_from(const json &v, const std::string &field) {
  if (!v.is_string())
    throw ConfigError(field, "must be \"alpha\" or \"beta\"");
  const auto s = v.get<std::string>();
  if (s == "alpha")
    return Spin::alpha;
  if (s == "beta")
    return Spin::beta;
  throw ConfigError(field, fmt::format("must be \"alpha\" or \"beta\", got \"{}\"", s));
}

void require(bool ok, const std::string &field, const std::string &message) {
  if (!ok)
    throw ConfigError(field, message);
}

} // namespace

RunConfig parse_run_config(const json &doc) {
  RunConfig run;
  ObjectReader root(doc, "");

  const std::string model = root.text("model").value_or("rhf");
  if (model == "rhf")
    run.config.model = Model::rhf;
  else if (model == "uhf")
    run.config.model = Model::uhf;
  else
    throw ConfigError("model", fmt::format("must be \"rhf\" or \"uhf\", got \"{}\"", model));

  run.config.Z = ObjectReader::as_number(root.require("Z"), "Z");
  require(run.config.Z > 0.0, "Z", "must be positive");

  const json &shells = root.require("shells");
  require(shells.is_array(), "shells", "must be an array");
  require(!shells.empty(), "shells", "must contain at least one shell");
  for (std::size_t i = 0; i < shells.size(); ++i) {
    const std::string path = fmt::format("shells[{}]", i);
    ObjectReader shell(shells[i], path);
    ShellSpec spec;
    const int l = ObjectReader::as_integer(shell.require("l"), shell.field("l"));
    require(l >= 0, shell.field("l"), "must be a non-negative integer");
    spec.l = l;
    if (const json *spin = shell.find("spin")) {
      require(run.config.model == Model::uhf, shell.field("spin"),
              "only allowed for model \"uhf\"");
      spec.spin = spin_from(*spin, shell.field("spin"));
    }
    shell.finish();
    run.config.shells.push_back(spec);
  }

  if (const json *grid = root.find("grid")) {
    ObjectReader g(*grid, "grid");
    if (const auto kind = g.text("kind")) {
      require(*kind == "uniform" || *kind == "exponential", g.field("kind"),
              "must be \"uniform\" or \"exponential\"");
      run.grid.kind = grid_kind_from_string(*kind);
    }
    run.grid.n = g.integer("n", run.grid.n);
    require(run.grid.n >= 16, g.field("n"), "must be at least 16");
    if (const json *r = g.find("r_max")) {
      run.grid.r_max = ObjectReader::as_number(*r, g.field("r_max"));
      require(*run.grid.r_max > 0.0, g.field("r_max"), "must be positive");
    }
    run.grid.gamma = g.number("gamma", run.grid.gamma);
    require(run.grid.gamma > 0.0, g.field("gamma"), "must be positive");
    g.finish();
  }

  if (const json *scf = root.find("scf")) {
    ObjectReader s(*scf, "scf");
    auto &o = run.scf;
    o.tol_energy = s.number("tol_energy", o.tol_energy);
    require(o.tol_energy > 0.0, s.field("tol_energy"), "must be positive");
    o.tol_residual = s.number("tol_residual", o.tol_residual);
    require(o.tol_residual > 0.0, s.field("tol_residual"), "must be positive");
    o.damping = s.number("damping", o.damping);
    require(o.damping > 0.0 && o.damping <= 1.0, s.field("damping"), "must lie in (0, 1]");
    o.min_damping = s.number("min_damping", o.min_damping);
    require(o.min_damping > 0.0 && o.min_damping <= o.damping, s.field("min_damping"),
            "must lie in (0, damping]");
    o.max_iter = s.integer("max_iter", o.max_iter);
    require(o.max_iter >= 1, s.field("max_iter"), "must be at least 1");
    o.tol_zero = s.number("tol_zero", o.tol_zero);
    require(o.tol_zero >= 0.0, s.field("tol_zero"), "must be non-negative");
    o.level_shift = s.number("level_shift", o.level_shift);
    require(o.level_shift >= 0.0, s.field("level_shift"), "must be non-negative");
    const double budget_mb =
        s.number("memory_budget_mb", static_cast<double>(o.memory_budget_bytes >> 20));
    require(budget_mb > 0.0, s.field("memory_budget_mb"), "must be positive");
    o.memory_budget_bytes = static_cast<std::size_t>(budget_mb * 1024.0 * 1024.0);
    if (const auto cache = s.text("kernel_cache"))
      o.kernel_cache = *cache;
    s.finish();
  }

  if (const json *output = root.find("output")) {
    ObjectReader o(*output, "output");
    if (const auto p = o.text("result"))
      run.output.result = *p;
    if (const auto p = o.text("orbitals_csv"))
      run.output.orbitals_csv = *p;
    o.finish();
  }
  root.finish();
  run.config.validate();
  return run;
}

RunConfig load_run_config(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in)
    throw ConfigError("<file>", fmt::format("cannot read {}", path.string()));
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error &e) {
    throw ConfigError("<file>", fmt::format("{} is not valid JSON: {}", path.string(), e.what()));
  }
  return parse_run_config(doc);
}

json to_json(const RunConfig &run) {
  const bool uhf = run.config.model == Model::uhf;
  json shells = json::array();
  for (const auto &s : run.config.shells) {
    json e = {{"l", s.l}};
    if (uhf)
      e["spin"] = to_string(s.spin);
    shells.push_back(e);
  }
  const auto &o = run.scf;
  json scf = {{"tol_energy", o.tol_energy},   {"tol_residual", o.tol_residual},
              {"damping", o.damping},         {"min_damping", o.min_damping},
              {"max_iter", o.max_iter},       {"tol_zero", o.tol_zero},
              {"level_shift", o.level_shift},
              {"memory_budget_mb", static_cast<double>(o.memory_budget_bytes) / (1024.0 * 1024.0)}};
  if (o.kernel_cache)
    scf["kernel_cache"] = o.kernel_cache->string();
  json output = json::object();
  if (run.output.result)
    output["result"] = run.output.result->string();
  if (run.output.orbitals_csv)
    output["orbitals_csv"] = run.output.orbitals_csv->string();
  return {{"model", to_string(run.config.model)},
          {"Z", run.config.Z},
          {"shells", shells},
          {"grid",
           {{"kind", to_string(run.grid.kind)},
            {"n", run.grid.n},
            {"r_max", run.grid.r_max.value_or(default_r_max(run.config))},
            {"gamma", run.grid.gamma}}},
          {"scf", scf},
          {"output", output}};
}

json to_json(const EnergyBreakdown &e) {
  return {{"kinetic", e.kinetic}, {"nuclear", e.nuclear}, {"direct", e.direct},
          {"exchange", e.exchange}, {"total", e.total}};
}

json to_json(const TheoremReport &report) {
  json shells = json::array();
  for (const auto &s : report.shells) {
    json clauses = json::array();
    for (const auto &c : s.clauses)
      clauses.push_back({{"name", c.name},
                         {"applicable", c.applicable},
                         {"holds", c.holds},
                         {"detail", c.detail}});
    shells.push_back({{"shell", s.shell},
                      {"l", s.spec.l},
                      {"spin", to_string(s.spec.spin)},
                      {"epsilon_sign", s.epsilon < 0.0 ? "negative"
                                       : s.epsilon > 0.0 ? "positive"
                                                         : "zero"},
                      {"epsilon", s.epsilon},
                      {"norm", s.norm},
                      {"marginal", s.marginal},
                      {"clauses", clauses}});
  }
  json spectra = json::array();
  for (const auto &sp : report.spectra)
    spectra.push_back({{"channel", describe(sp.key, report.model)},
                       {"shells", sp.shells},
                       {"eigenvalues", sp.eigenvalues}});
  return {{"model", to_string(report.model)},
          {"Z", report.Z},
          {"N", report.N},
          {"regime", report.regime},
          {"evaluated", report.evaluated},
          {"violations", report.violations},
          {"shells", shells},
          {"spectra", spectra}};
}

json result_document(const RunConfig &run, const ScfState &state, const TheoremReport &report) {
  json shells = json::array();
  for (std::size_t i = 0; i < state.shells.size(); ++i) {
    const auto &s = state.shells[i];
    json e = {{"index", i},           {"l", s.spec.l},       {"epsilon", s.epsilon},
              {"norm", s.norm},       {"residual", s.residual}, {"marginal", s.marginal}};
    if (state.config.model == Model::uhf)
      e["spin"] = to_string(s.spec.spin);
    shells.push_back(e);
  }
  const auto &grid = *state.grid();
  std::vector<double> r(grid.points().begin(), grid.points().end());
  json samples = json::array();
  for (const auto &s : state.shells)
    samples.push_back(std::vector<double>(s.orbital.values().begin(), s.orbital.values().end()));

  return {{"input", to_json(run)},
          {"units",
           {{"energy", "paper"},
            {"note", "kinetic energy is |f'|^2 without the factor 1/2; multiply energies and "
                     "eigenvalues by 2 for Hartree atomic units"}}},
          {"energy", to_json(state.energy)},
          {"shells", shells},
          {"theorem_report", to_json(report)},
          {"convergence",
           {{"converged", state.converged},
            {"message", state.message},
            {"iterations", state.iterations},
            {"rejected_steps", state.rejected_steps},
            {"final_damping", state.final_damping},
            {"max_residual", state.max_residual},
            {"last_energy_change", state.last_energy_change},
            {"max_gram_error", state.max_gram_error},
            {"energy_trace", state.energy_trace}}},
          {"provenance",
           {{"grid",
             {{"kind", to_string(grid.kind())},
              {"n", grid.size()},
              {"r_max", grid.r_max()},
              {"gamma", grid.gamma()},
              {"hash", fmt::format("{:016x}", grid.hash())}}},
            {"tolerances",
             {{"tol_energy", run.scf.tol_energy},
              {"tol_residual", run.scf.tol_residual},
              {"tol_zero", run.scf.tol_zero},
              {"eigen_residual", run.scf.eigen.residual_tol}}},
            {"iterations", state.iterations}}},
          {"orbitals", {{"r", r}, {"f", samples}}}};
}

void write_orbitals_csv(std::ostream &out, const ScfState &state) {
  const auto &grid = *state.grid();
  const double per_orbital = state.config.model == Model::rhf ? 2.0 : 1.0;
  out << "r";
  for (std::size_t j = 0; j < state.shells.size(); ++j)
    out << ",f_" << (j + 1);
  out << ",density\n";
  for (int i = 0; i < grid.size(); ++i) {
    out << fmt::format("{:.16e}", grid.r(i));
    double rho = 0.0;
    for (const auto &s : state.shells) {
      const double f = s.orbital[i];
      out << fmt::format(",{:.16e}", f);
      rho += per_orbital * (2 * s.spec.l + 1) * f * f;
    }
    out << fmt::format(",{:.16e}\n", rho);
  }
}

ScfState state_from_result(const json &doc) {
  if (!doc.is_object() || !doc.contains("input"))
    throw Error("result document has no input echo");
  if (!doc.contains("orbitals") || !doc["orbitals"].contains("f") ||
      !doc["orbitals"].contains("r"))
    throw Error("result document has no orbital data");
  RunConfig run;
  try {
    run = parse_run_config(doc["input"]);
  } catch (const ConfigError &e) {
    throw Error(fmt::format("result document input echo is invalid: {}", e.what()));
  }
  const auto &stored_r = doc["orbitals"]["r"];
  const auto &stored_f = doc["orbitals"]["f"];
  if (!stored_f.is_array() || stored_f.size() != run.config.shells.size())
    throw Error("result document orbital data does not match its shell list");

  ScfState state;
  state.config = run.config;
  state.table = build_table(run.config, run.grid, run.scf);
  const GridPtr &grid = state.grid();
  if (!stored_r.is_array() || static_cast<int>(stored_r.size()) != grid->size())
    throw Error("result document radii do not match its grid description");
  for (int i = 0; i < grid->size(); ++i)
    if (std::fabs(stored_r[i].get<double>() - grid->r(i)) > 1e-12 * grid->r_max())
      throw Error("result document radii do not match its grid description");

  for (std::size_t j = 0; j < stored_f.size(); ++j) {
    ShellState s;
    s.spec = run.config.shells[j];
    std::vector<double> v = stored_f[j].get<std::vector<double>>();
    if (static_cast<int>(v.size()) != grid->size())
      throw Error(fmt::format("result document orbital {} has the wrong length", j + 1));
    s.orbital = RadialFunction(grid, std::move(v));
    state.shells.push_back(std::move(s));
  }
  if (const auto it = doc.find("convergence"); it != doc.end()) {
    state.converged = it->value("converged", false);
    state.iterations = it->value("iterations", 0);
    state.message = it->value("message", std::string{});
  }
  refresh(state);
  for (auto &s : state.shells)
    s.marginal = std::fabs(s.epsilon) <= run.scf.tol_zero;
  return state;
}

} // namespace radhf
