#pragma once

#include "radhf/configuration.hpp"
#include "radhf/energy.hpp"
#include "radhf/grid.hpp"
#include "radhf/kernels.hpp"
#include "radhf/operators.hpp"

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace radhf {

struct GridOptions {
  GridKind kind = GridKind::uniform;
  int n = 2000;
  std::optional<double> r_max; // default_r_max() when unset
  double gamma = 6.0;
};

// 40 length units for neutral atoms, cations and singly charged anions,
// 80 for more negative ions. The cutoff does not scale with Z: the outer
// shells of neutral atoms decay on a Z-independent scale.
double default_r_max(const Configuration &config);

GridPtr make_grid_for(const Configuration &config, const GridOptions &options);

struct ScfOptions {
  double tol_energy = 1e-9;   // relative change of the total energy
  double tol_residual = 1e-6; // max ||F f - eps f|| over occupied orbitals
  double damping = 0.3;       // initial mixing weight of the proposed density
  double min_damping = 1e-4;
  int max_iter = 500;
  double tol_zero = 1e-8;     // eigenvalues above this leave the orbital empty
  double level_shift = 0.0;   // added to unoccupied directions of each channel
  EigenOptions eigen;
  std::size_t memory_budget_bytes = std::size_t{1} << 30;
  std::optional<std::filesystem::path> kernel_cache;
};

struct ShellState {
  ShellSpec spec;
  RadialFunction orbital;
  double epsilon = 0.0;  // <f|F|f> / <f|f> under the final Fock operator; lowest
                         // assigned eigenvalue for empty shells
  double norm = 0.0;
  double residual = 0.0;
  bool marginal = false; // |epsilon| <= tol_zero
};

// Eigenvalue ordering within one channel at the final Fock operator.
struct ChannelSpectrum {
  ChannelKey key;
  std::vector<int> shells;          // config indices, in assignment order
  std::vector<double> eigenvalues;  // lowest shells.size() + 1 (if available)
};

struct ScfState {
  Configuration config;
  std::shared_ptr<const kernels::KernelTable> table;
  std::vector<ShellState> shells;
  EnergyBreakdown energy;
  std::vector<double> energy_trace; // functional value after each accepted step
  std::vector<ChannelSpectrum> spectra;
  int iterations = 0;
  int rejected_steps = 0;
  double final_damping = 0.0;
  double max_residual = 0.0;
  double last_energy_change = 0.0;
  double max_gram_error = 0.0; // worst same-channel Gram deviation over all proposals
  bool converged = false;
  std::string message;

  const GridPtr &grid() const { return table->grid(); }
  std::vector<RadialFunction> orbitals() const;
};

// Orbital assignment within each channel: the k lowest eigenfunctions go to
// the k shells of the channel in shell order; an eigenvalue above tol_zero
// leaves its shell empty.
struct Occupation {
  std::vector<RadialFunction> orbitals; // config order
  std::vector<double> eigenvalues;
  std::vector<bool> marginal;
  std::vector<bool> empty;
};

Occupation occupy(const std::map<ChannelKey, std::vector<Eigenpair>> &eigenpairs,
                  const Configuration &config, double tol_zero);

std::shared_ptr<const kernels::KernelTable> build_table(const Configuration &config,
                                                        const GridOptions &grid,
                                                        const ScfOptions &options);

ScfState solve(const Configuration &config, const GridOptions &grid = {},
               const ScfOptions &options = {});
ScfState solve(const Configuration &config, std::shared_ptr<const kernels::KernelTable> table,
               const ScfOptions &options = {});

// Recomputes energy, eigenvalue estimates and residuals of a state after its
// orbitals were modified (e.g. scaled for a fixture). Keeps the trace.
void refresh(ScfState &state);

// Smooth bump J(x) = C exp(-1/(1 - u^2)), u = 2x - 3, supported in [1, 2],
// unit L2 norm; J_R(r) = R^{-1/2} J(r / R).
class BumpProfile {
public:
  BumpProfile();
  double operator()(double x) const;
  double scaled(double R, double r) const;
  RadialFunction sample(const GridPtr &grid, double R) const;
  double normalization() const { return c_; }

private:
  double c_;
};

struct ProbePoint {
  double R = 0.0;
  double coefficient = 0.0;
};

// delta^2 coefficient of the RHF functional along J_R, orthogonalized
// against the channel orbitals of shell i and normalized. Throws when the
// support [R, 2R] does not fit inside [0, r_max], naming the required r_max.
std::vector<ProbePoint> probe_shell(const ScfState &state, int i,
                                    const std::vector<double> &R_values, double lambda);

struct ClauseCheck {
  std::string name;
  bool applicable = false;
  bool holds = true;
  std::string detail;
};

struct ShellClassification {
  int shell = 0;
  ShellSpec spec;
  double epsilon = 0.0;
  double norm = 0.0;
  bool marginal = false;
  std::vector<ClauseCheck> clauses;
};

struct TheoremReport {
  Model model = Model::rhf;
  double Z = 0.0;
  int N = 0;
  std::string regime; // "Z > N-1", "Z = N-1" or "Z < N-1"
  bool evaluated = false; // false when the state is not converged
  std::vector<ShellClassification> shells;
  std::vector<ChannelSpectrum> spectra; // reported only
  int violations = 0;
};

struct ReportTolerances {
  double norm = 1e-6;
  double epsilon = 1e-8;
};

TheoremReport theorem_report(const ScfState &state, const ReportTolerances &tol = {});

// Spinless UHF, first shell l = 0, remaining shells l > 0.
struct SpinlessUhfBounds {
  double E_full = 0.0;
  double E_without_s_shell = 0.0; // functional at (0, f_2, ..., f_s)
  double hydrogen_bound = 0.0;    // -Z^2/4
  double dropped_bound = 0.0;     // -Z^2/4 sum_{i>=2} (2l_i+1)/(l_i+1)^2
  bool shell_condition = false;   // s < 2 + sum (l_i/(l_i+1))^2
  bool charge_condition = false;  // Z = sum_{i>=2} (2l_i+1) and N = Z + 1
  bool holds() const {
    return E_full <= hydrogen_bound && E_without_s_shell >= dropped_bound &&
           dropped_bound > hydrogen_bound;
  }
};

SpinlessUhfBounds corollary_inequalities(const ScfState &state);

} // namespace radhf
