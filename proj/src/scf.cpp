#include "radhf/scf.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace radhf {

double default_r_max(const Configuration &config) {
  return config.electron_count() <= config.Z + 1.0 ? 40.0 : 80.0;
}

GridPtr make_grid_for(const Configuration &config, const GridOptions &options) {
  return make_grid(options.kind, options.n, options.r_max.value_or(default_r_max(config)),
                   options.gamma);
}

std::vector<RadialFunction> ScfState::orbitals() const {
  std::vector<RadialFunction> out;
  out.reserve(shells.size());
  for (const auto &s : shells)
    out.push_back(s.orbital);
  return out;
}

namespace {

ChannelKey key_of(const Configuration &config, int i) {
  const auto &s = config.shells[i];
  return {s.l, config.model == Model::uhf ? s.spin : Spin::alpha};
}

std::map<ChannelKey, std::vector<int>> channels_of(const Configuration &config) {
  std::map<ChannelKey, std::vector<int>> out;
  for (int i = 0; i < static_cast<int>(config.shells.size()); ++i)
    out[key_of(config, i)].push_back(i);
  return out;
}

double gram_error(const Configuration &config, const std::vector<RadialFunction> &orbitals,
                  const std::vector<bool> &empty) {
  double worst = 0.0;
  for (const auto &[key, members] : channels_of(config)) {
    for (std::size_t a = 0; a < members.size(); ++a) {
      if (empty[members[a]])
        continue;
      for (std::size_t b = a; b < members.size(); ++b) {
        if (empty[members[b]])
          continue;
        const double target = a == b ? 1.0 : 0.0;
        worst = std::max(worst,
                         std::fabs(inner(orbitals[members[a]], orbitals[members[b]]) - target));
      }
    }
  }
  return worst;
}

} // namespace

Occupation occupy(const std::map<ChannelKey, std::vector<Eigenpair>> &eigenpairs,
                  const Configuration &config, double tol_zero) {
  const int s0 = static_cast<int>(config.shells.size());
  Occupation occ;
  occ.orbitals.resize(s0);
  occ.eigenvalues.assign(s0, 0.0);
  occ.marginal.assign(s0, false);
  occ.empty.assign(s0, false);
  for (const auto &[key, members] : channels_of(config)) {
    const auto it = eigenpairs.find(key);
    if (it == eigenpairs.end() || it->second.size() < members.size())
      throw Error(fmt::format("occupy: not enough eigenpairs for channel l={}", key.l));
    for (std::size_t m = 0; m < members.size(); ++m) {
      const auto &pair = it->second[m];
      const int i = members[m];
      occ.eigenvalues[i] = pair.value;
      if (pair.value > tol_zero) {
        occ.orbitals[i] = RadialFunction(pair.function.grid());
        occ.empty[i] = true;
      } else {
        occ.orbitals[i] = pair.function;
        occ.marginal[i] = std::fabs(pair.value) <= tol_zero;
      }
    }
  }
  return occ;
}

std::shared_ptr<const kernels::KernelTable> build_table(const Configuration &config,
                                                        const GridOptions &grid,
                                                        const ScfOptions &options) {
  const GridPtr g = make_grid_for(config, grid);
  kernels::TableOptions table_options;
  table_options.memory_budget_bytes = options.memory_budget_bytes;
  if (options.kernel_cache)
    return std::make_shared<const kernels::KernelTable>(
        kernels::KernelTable::cached(*options.kernel_cache, g, config.max_l(), table_options));
  return std::make_shared<const kernels::KernelTable>(g, config.max_l(), table_options);
}

ScfState solve(const Configuration &config, const GridOptions &grid, const ScfOptions &options) {
  config.validate();
  return solve(config, build_table(config, grid, options), options);
}

namespace {

class Solver {
public:
  Solver(const Configuration &config, std::shared_ptr<const kernels::KernelTable> table,
         const ScfOptions &options)
      : config_(config), table_(std::move(table)), options_(options),
        channels_(channels_of(config)) {}

  ScfState run();

private:
  std::map<ChannelKey, std::vector<Eigenpair>> diagonalize(const DensitySet *density);
  std::map<ChannelKey, FockMatrix> fock_matrices(const DensitySet &density) const;
  ScfState finish(const Occupation &occ, const DensitySet &density,
                  const std::map<ChannelKey, std::vector<Eigenpair>> &pairs);

  const Configuration &config_;
  std::shared_ptr<const kernels::KernelTable> table_;
  const ScfOptions &options_;
  std::map<ChannelKey, std::vector<int>> channels_;
  std::map<ChannelKey, double> shift_hint_;
  std::map<ChannelKey, Eigen::MatrixXd> guess_; // previous eigenvectors, scaled
  ScfState state_;
};

std::map<ChannelKey, std::vector<Eigenpair>> Solver::diagonalize(const DensitySet *density) {
  const auto &grid = table_->grid();
  std::map<ChannelKey, std::vector<Eigenpair>> out;
  for (const auto &[key, members] : channels_) {
    const int count = std::min(static_cast<int>(members.size()) + 1, grid->size());
    FockMatrix F = density ? assemble_fock(*table_, config_.Z, *density, key)
                           : hydrogenic_matrix(grid, key.l, config_.Z);
    if (density && options_.level_shift != 0.0) {
      // F + s (1 - Gamma): raises the unoccupied directions only
      F.diagonal.array() += options_.level_shift;
      *F.exchange += options_.level_shift * density->gamma.at(key);
    }
    EigenOptions eig = options_.eigen;
    if (const auto it = shift_hint_.find(key); it != shift_hint_.end())
      eig.shift_hint = it->second;
    if (const auto it = guess_.find(key); it != guess_.end())
      eig.guess = it->second;
    auto pairs = lowest_eigenpairs(F, count, eig);
    const double low = pairs.front().value;
    shift_hint_[key] = low - 0.1 * std::fabs(low) - 0.5;
    Eigen::MatrixXd vectors(grid->size(), count);
    for (int c = 0; c < count; ++c)
      vectors.col(c) = to_scaled(pairs[c].function);
    guess_[key] = std::move(vectors);
    out.emplace(key, std::move(pairs));
  }
  return out;
}

std::map<ChannelKey, FockMatrix> Solver::fock_matrices(const DensitySet &density) const {
  std::map<ChannelKey, FockMatrix> out;
  for (const auto &[key, members] : channels_)
    out.emplace(key, assemble_fock(*table_, config_.Z, density, key));
  return out;
}

ScfState Solver::finish(const Occupation &occ, const DensitySet &density,
                        const std::map<ChannelKey, std::vector<Eigenpair>> &pairs) {
  const auto focks = fock_matrices(density);
  state_.shells.clear();
  state_.max_residual = 0.0;
  for (int i = 0; i < static_cast<int>(config_.shells.size()); ++i) {
    ShellState s;
    s.spec = config_.shells[i];
    s.orbital = occ.orbitals[i];
    s.norm = s.orbital.norm();
    if (occ.empty[i]) {
      s.epsilon = occ.eigenvalues[i];
    } else {
      const auto &F = focks.at(key_of(config_, i));
      s.epsilon = F.quadratic_form(s.orbital) / (s.norm * s.norm);
      s.residual = F.residual(s.orbital);
    }
    s.marginal = std::fabs(s.epsilon) <= options_.tol_zero;
    state_.max_residual = std::max(state_.max_residual, s.residual);
    state_.shells.push_back(std::move(s));
  }
  state_.spectra.clear();
  for (const auto &[key, members] : channels_) {
    ChannelSpectrum spectrum{key, members, {}};
    for (const auto &p : pairs.at(key))
      spectrum.eigenvalues.push_back(p.value);
    state_.spectra.push_back(std::move(spectrum));
  }
  state_.energy = total_energy(*table_, config_, occ.orbitals);
  return std::move(state_);
}

ScfState Solver::run() {
  state_.config = config_;
  state_.table = table_;
  const auto &grid = table_->grid();

  auto pairs = diagonalize(nullptr);
  Occupation occ = occupy(pairs, config_, options_.tol_zero);
  state_.max_gram_error = gram_error(config_, occ.orbitals, occ.empty);
  DensitySet density = density_from_orbitals(grid, config_, occ.orbitals);
  double energy = density_energy(*table_, config_.Z, density).total;
  state_.energy_trace.push_back(energy);
  double alpha = options_.damping;

  for (int iter = 1; iter <= options_.max_iter; ++iter) {
    state_.iterations = iter;
    pairs = diagonalize(&density);
    occ = occupy(pairs, config_, options_.tol_zero);
    state_.max_gram_error =
        std::max(state_.max_gram_error, gram_error(config_, occ.orbitals, occ.empty));
    DensitySet proposal = density_from_orbitals(grid, config_, occ.orbitals);
    const double proposed = density_energy(*table_, config_.Z, proposal).total;
    state_.last_energy_change = proposed - energy;

    if (std::fabs(proposed - energy) <= options_.tol_energy * std::fabs(proposed)) {
      double worst = 0.0;
      const auto focks = fock_matrices(proposal);
      for (int i = 0; i < static_cast<int>(config_.shells.size()); ++i)
        if (!occ.empty[i])
          worst = std::max(worst, focks.at(key_of(config_, i)).residual(occ.orbitals[i]));
      if (worst <= options_.tol_residual) {
        state_.converged = true;
        state_.final_damping = alpha;
        state_.message = fmt::format("converged in {} iterations", iter);
        return finish(occ, proposal, pairs);
      }
    }

    // damped step; halve the weight until the functional does not increase
    const double slack = 1e-13 * std::max(1.0, std::fabs(energy));
    for (;;) {
      DensitySet mixed = density.mixed(proposal, alpha);
      const double e = density_energy(*table_, config_.Z, mixed).total;
      if (e <= energy + slack) {
        density = std::move(mixed);
        energy = e;
        break;
      }
      if (alpha <= options_.min_damping) {
        state_.final_damping = alpha;
        state_.message = fmt::format(
            "stalled after {} iterations: no descent at damping {:.2e}", iter, alpha);
        return finish(occ, proposal, pairs);
      }
      alpha = std::max(0.5 * alpha, options_.min_damping);
      ++state_.rejected_steps;
    }
    state_.energy_trace.push_back(energy);
  }
  state_.final_damping = alpha;
  state_.message = fmt::format("not converged after {} iterations (last energy change {:.3e})",
                               options_.max_iter, state_.last_energy_change);
  DensitySet proposal = density_from_orbitals(grid, config_, occ.orbitals);
  return finish(occ, proposal, pairs);
}

} // namespace

ScfState solve(const Configuration &config, std::shared_ptr<const kernels::KernelTable> table,
               const ScfOptions &options) {
  config.validate();
  if (config.max_l() > table->max_l())
    throw Error(fmt::format("kernel table covers l <= {}, configuration needs {}",
                            table->max_l(), config.max_l()));
  Solver solver(config, std::move(table), options);
  return solver.run();
}

void refresh(ScfState &state) {
  const auto orbitals = state.orbitals();
  const auto &table = *state.table;
  state.energy = total_energy(table, state.config, orbitals);
  state.max_residual = 0.0;
  std::map<ChannelKey, FockMatrix> focks;
  for (int i = 0; i < static_cast<int>(state.shells.size()); ++i) {
    auto &s = state.shells[i];
    s.norm = s.orbital.norm();
    if (s.norm == 0.0) {
      s.residual = 0.0;
      continue;
    }
    const ChannelKey key = key_of(state.config, i);
    auto it = focks.find(key);
    if (it == focks.end())
      it = focks.emplace(key, assemble_fock(table, state.config, orbitals, key.l, key.spin))
               .first;
    s.epsilon = it->second.quadratic_form(s.orbital) / (s.norm * s.norm);
    s.residual = it->second.residual(s.orbital);
    state.max_residual = std::max(state.max_residual, s.residual);
  }
}

//==============================================================================
BumpProfile::BumpProfile() : c_(1.0) {
  // int_1^2 exp(-2/(1-u^2)) dx = 1/2 int_{-1}^{1} exp(-2/(1-u^2)) du
  const auto rule = angular::gauss_legendre(200);
  double s = 0.0;
  for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
    const double u = rule.nodes[q];
    s += rule.weights[q] * std::exp(-2.0 / (1.0 - u * u));
  }
  c_ = 1.0 / std::sqrt(0.5 * s);
}

double BumpProfile::operator()(double x) const {
  const double u = 2.0 * x - 3.0;
  if (std::fabs(u) >= 1.0)
    return 0.0;
  return c_ * std::exp(-1.0 / (1.0 - u * u));
}

double BumpProfile::scaled(double R, double r) const { return (*this)(r / R) / std::sqrt(R); }

RadialFunction BumpProfile::sample(const GridPtr &grid, double R) const {
  return RadialFunction::sample(grid, [&](double r) { return scaled(R, r); });
}

std::vector<ProbePoint> probe_shell(const ScfState &state, int i,
                                    const std::vector<double> &R_values, double lambda) {
  const auto &config = state.config;
  if (config.model != Model::rhf)
    throw Error("probe_shell: RHF states only");
  if (i < 0 || i >= static_cast<int>(config.shells.size()))
    throw Error(fmt::format("probe_shell: shell index {} out of range", i));
  if (lambda < 0.0)
    throw Error("probe_shell: lambda must be non-negative");
  const auto &grid = state.grid();
  const auto orbitals = state.orbitals();
  const BumpProfile bump;
  std::vector<ProbePoint> out;
  for (const double R : R_values) {
    if (!(R > 0.0))
      throw Error("probe_shell: R must be positive");
    if (2.0 * R > grid->r_max())
      throw Error(fmt::format("probe_shell: R = {} needs r_max >= {} (grid r_max = {})", R,
                              2.0 * R, grid->r_max()));
    RadialFunction h = bump.sample(grid, R);
    for (int pass = 0; pass < 2; ++pass) {
      for (const int j : config.channel_members(i)) {
        const double nn = inner(orbitals[j], orbitals[j]);
        if (nn > 0.0)
          h -= (inner(orbitals[j], h) / nn) * orbitals[j];
      }
    }
    const double norm = h.norm();
    if (norm < 1e-12)
      throw Error(fmt::format("probe_shell: J_R for R = {} lies in the occupied span", R));
    h *= 1.0 / norm;
    out.push_back({R, second_order_coefficient(*state.table, config, orbitals, i, h, lambda)});
  }
  return out;
}

} // namespace radhf
