#include "radhf/scf.hpp"

#include <cmath>

#include <fmt/format.h>

namespace radhf {

namespace {

ClauseCheck clause(std::string name, bool applicable, bool holds, std::string detail) {
  return {std::move(name), applicable, applicable ? holds : true, std::move(detail)};
}

} // namespace

TheoremReport theorem_report(const ScfState &state, const ReportTolerances &tol) {
  const auto &config = state.config;
  TheoremReport report;
  report.model = config.model;
  report.Z = config.Z;
  report.N = config.electron_count();
  const double gap = config.Z - (report.N - 1);
  report.regime = gap > 0.0 ? "Z > N-1" : (gap == 0.0 ? "Z = N-1" : "Z < N-1");
  report.spectra = state.spectra;
  report.evaluated = state.converged;
  if (!state.converged)
    return report;

  const double Z = config.Z;
  const int N = report.N;
  const bool rhf = config.model == Model::rhf;
  for (int i = 0; i < static_cast<int>(state.shells.size()); ++i) {
    const auto &s = state.shells[i];
    ShellClassification c;
    c.shell = i;
    c.spec = s.spec;
    c.epsilon = s.epsilon;
    c.norm = s.norm;
    c.marginal = s.marginal;
    const int l = s.spec.l;
    const bool empty = s.norm == 0.0;
    const bool unit = std::fabs(s.norm - 1.0) <= tol.norm;
    const bool negative = !empty && s.epsilon < -tol.epsilon;

    c.clauses.push_back(clause("eigenvalue_nonpositive_or_empty", true,
                               empty || s.epsilon <= tol.epsilon,
                               fmt::format("eps = {:.10g}, norm = {:.10g}", s.epsilon, s.norm)));
    c.clauses.push_back(clause("negative_eigenvalue_implies_unit_norm", negative, unit,
                               fmt::format("norm = {:.10g}", s.norm)));
    // a shell holds 2(2l+1) electrons for RHF and 2l+1 for one UHF spin
    const int shell_electrons = (rhf ? 2 : 1) * (2 * l + 1);
    c.clauses.push_back(clause("occupied_when_Z_exceeds_N_minus_shell", Z > N - shell_electrons,
                               !empty, fmt::format("Z = {}, N - {} = {}", Z, shell_electrons,
                                                   N - shell_electrons)));
    const bool critical_applies = Z >= N - 1 && (rhf || l != 0);
    c.clauses.push_back(clause("unit_norm_when_Z_at_least_N_minus_1", critical_applies, unit,
                               fmt::format("norm = {:.10g}", s.norm)));
    c.clauses.push_back(clause("bound_orbital_when_Z_exceeds_N_minus_1", Z > N - 1,
                               negative && unit,
                               fmt::format("eps = {:.10g}, norm = {:.10g}", s.epsilon, s.norm)));
    for (const auto &cl : c.clauses)
      if (!cl.holds)
        ++report.violations;
    report.shells.push_back(std::move(c));
  }
  return report;
}

SpinlessUhfBounds corollary_inequalities(const ScfState &state) {
  const auto &config = state.config;
  if (config.model != Model::uhf)
    throw Error("corollary_inequalities: UHF configuration required");
  if (config.shells.size() < 2 || config.shells[0].l != 0)
    throw Error("corollary_inequalities: first shell must be l = 0 followed by l > 0 shells");
  for (std::size_t i = 0; i < config.shells.size(); ++i) {
    if (config.shells[i].spin != Spin::alpha)
      throw Error("corollary_inequalities: spinless (all alpha) configuration required");
    if (i > 0 && config.shells[i].l == 0)
      throw Error("corollary_inequalities: only the first shell may have l = 0");
  }

  SpinlessUhfBounds c;
  const double Z = config.Z;
  c.hydrogen_bound = -Z * Z / 4.0;
  double sum = 0.0, ratio = 0.0;
  int charge = 0;
  for (std::size_t i = 1; i < config.shells.size(); ++i) {
    const double l = config.shells[i].l;
    sum += (2 * l + 1) / ((l + 1) * (l + 1));
    ratio += (l / (l + 1)) * (l / (l + 1));
    charge += 2 * config.shells[i].l + 1;
  }
  c.dropped_bound = -Z * Z / 4.0 * sum;
  c.shell_condition = static_cast<double>(config.shells.size()) < 2.0 + ratio;
  c.charge_condition = Z == charge && config.electron_count() == charge + 1;

  c.E_full = state.energy.total;
  auto orbitals = state.orbitals();
  orbitals[0] = RadialFunction(state.grid());
  c.E_without_s_shell = total_energy(*state.table, config, orbitals).total;
  return c;
}

} // namespace radhf
