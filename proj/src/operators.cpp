#include "radhf/operators.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace radhf {

Eigen::VectorXd to_scaled(const RadialFunction &f) {
  const auto &grid = *f.grid();
  Eigen::VectorXd g(grid.size());
  for (int i = 0; i < grid.size(); ++i)
    g[i] = std::sqrt(grid.weight(i)) * f[i];
  return g;
}

RadialFunction from_scaled(const GridPtr &grid, const Eigen::VectorXd &g) {
  std::vector<double> v(grid->size());
  for (int i = 0; i < grid->size(); ++i)
    v[i] = g[i] / std::sqrt(grid->weight(i));
  return RadialFunction(grid, std::move(v));
}

std::string describe(const ChannelKey &key, Model model) {
  if (model == Model::rhf)
    return fmt::format("rhf l={}", key.l);
  return fmt::format("uhf-{} l={}", to_string(key.spin), key.l);
}

namespace {

ChannelKey key_of(const Configuration &config, int i) {
  const auto &s = config.shells[i];
  return {s.l, config.model == Model::uhf ? s.spin : Spin::alpha};
}

double electrons_per_orbital(Model model) { return model == Model::rhf ? 2.0 : 1.0; }

Eigen::VectorXd channel_charge(const DensitySet &d, std::optional<Spin> spin) {
  const int n = d.grid->size();
  Eigen::VectorXd rho = Eigen::VectorXd::Zero(n);
  for (const auto &[key, gamma] : d.gamma) {
    if (spin && key.spin != *spin)
      continue;
    const double c = electrons_per_orbital(d.model) * (2 * key.l + 1);
    for (int a = 0; a < n; ++a)
      rho[a] += c * gamma(a, a) / d.grid->weight(a);
  }
  return rho;
}

} // namespace

DensitySet DensitySet::mixed(const DensitySet &other, double alpha) const {
  DensitySet out;
  out.grid = grid;
  out.model = model;
  for (const auto &[key, g] : gamma)
    out.gamma[key] = (1.0 - alpha) * g;
  for (const auto &[key, g] : other.gamma) {
    auto it = out.gamma.find(key);
    if (it == out.gamma.end())
      out.gamma[key] = alpha * g;
    else
      it->second += alpha * g;
  }
  return out;
}

Eigen::VectorXd DensitySet::charge_density() const { return channel_charge(*this, std::nullopt); }

Eigen::VectorXd DensitySet::spin_density(Spin spin) const {
  if (model != Model::uhf)
    throw Error("spin_density: only defined for UHF densities");
  return channel_charge(*this, spin);
}

DensitySet density_from_orbitals(const GridPtr &grid, const Configuration &config,
                                 const std::vector<RadialFunction> &orbitals,
                                 std::optional<int> drop_shell) {
  if (orbitals.size() != config.shells.size())
    throw Error(fmt::format("{} orbitals for {} shells", orbitals.size(), config.shells.size()));
  if (drop_shell && (*drop_shell < 0 || *drop_shell >= static_cast<int>(orbitals.size())))
    throw Error(fmt::format("drop_shell {} out of range", *drop_shell));
  DensitySet d;
  d.grid = grid;
  d.model = config.model;
  const int n = grid->size();
  for (int i = 0; i < static_cast<int>(orbitals.size()); ++i) {
    auto &gamma = d.gamma[key_of(config, i)];
    if (gamma.size() == 0)
      gamma = Eigen::MatrixXd::Zero(n, n);
    if (drop_shell && *drop_shell == i)
      continue;
    if (!same_grid(grid, orbitals[i].grid()))
      throw GridMismatch();
    const Eigen::VectorXd g = to_scaled(orbitals[i]);
    gamma.noalias() += g * g.transpose();
  }
  return d;
}

//==============================================================================
Eigen::MatrixXd FockMatrix::dense() const {
  const int n = size();
  Eigen::MatrixXd m = exchange ? Eigen::MatrixXd(-*exchange) : Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    m(i, i) += diagonal[i];
  for (int i = 0; i + 1 < n; ++i) {
    m(i, i + 1) += off_diagonal[i];
    m(i + 1, i) += off_diagonal[i];
  }
  return m;
}

Eigen::VectorXd FockMatrix::apply(const Eigen::VectorXd &g) const {
  const int n = size();
  Eigen::VectorXd y = diagonal.cwiseProduct(g);
  for (int i = 0; i + 1 < n; ++i) {
    y[i] += off_diagonal[i] * g[i + 1];
    y[i + 1] += off_diagonal[i] * g[i];
  }
  if (exchange)
    y.noalias() -= *exchange * g;
  return y;
}

double FockMatrix::quadratic_form(const RadialFunction &f) const {
  const Eigen::VectorXd g = to_scaled(f);
  return g.dot(apply(g));
}

double FockMatrix::bilinear_form(const RadialFunction &g, const RadialFunction &f) const {
  require_same_grid(g, f);
  return to_scaled(g).dot(apply(to_scaled(f)));
}

double FockMatrix::residual(const RadialFunction &f) const {
  const Eigen::VectorXd g = to_scaled(f);
  const double nn = g.squaredNorm();
  if (nn == 0.0)
    return 0.0;
  const Eigen::VectorXd fg = apply(g);
  const double eps = g.dot(fg) / nn;
  return (fg - eps * g).norm() / std::sqrt(nn);
}

namespace {

FockMatrix local_matrix(const GridPtr &grid, int l, double Z, const Eigen::VectorXd &direct) {
  const int n = grid->size();
  const auto dr = grid->spacings();
  const double centrifugal = l * (l + 1.0);
  FockMatrix F;
  F.grid = grid;
  F.l = l;
  F.diagonal.resize(n);
  F.off_diagonal.resize(n - 1);
  F.direct = direct;
  for (int i = 0; i < n; ++i) {
    const double r = grid->r(i);
    const double w = grid->weight(i);
    F.diagonal[i] = (1.0 / dr[i] + 1.0 / dr[i + 1]) / w + centrifugal / (r * r) - Z / r +
                    direct[i];
  }
  for (int i = 0; i + 1 < n; ++i)
    F.off_diagonal[i] = -1.0 / (dr[i + 1] * std::sqrt(grid->weight(i) * grid->weight(i + 1)));
  return F;
}

} // namespace

FockMatrix hydrogenic_matrix(const GridPtr &grid, int l, double Z) {
  if (l < 0)
    throw Error("hydrogenic_matrix: negative l");
  FockMatrix F = local_matrix(grid, l, Z, Eigen::VectorXd::Zero(grid->size()));
  F.context = fmt::format("hydrogenic l={} Z={}", l, Z);
  return F;
}

Eigen::VectorXd direct_potential(const GridPtr &grid,
                                 const std::vector<WeightedOrbital> &orbitals) {
  const int n = grid->size();
  Eigen::VectorXd rho = Eigen::VectorXd::Zero(n);
  for (const auto &o : orbitals) {
    if (!same_grid(grid, o.orbital->grid()))
      throw GridMismatch();
    for (int a = 0; a < n; ++a)
      rho[a] += o.weight * abs2((*o.orbital)[a]);
  }
  return kernels::direct_potential_from_density(*grid, rho);
}

Eigen::MatrixXd exchange_matrix(const kernels::KernelTable &table, const DensitySet &density,
                                const ChannelKey &channel) {
  const int n = table.size();
  Eigen::MatrixXd K = Eigen::MatrixXd::Zero(n, n);
  for (const auto &[key, gamma] : density.gamma) {
    if (density.model == Model::uhf && key.spin != channel.spin)
      continue;
    K.noalias() += (2 * key.l + 1.0) * table.exchange(channel.l, key.l).cwiseProduct(gamma);
  }
  return K;
}

Eigen::MatrixXd exchange_matrix(const kernels::KernelTable &table, const Configuration &config,
                                const std::vector<RadialFunction> &orbitals, int l, Spin spin,
                                std::optional<int> drop_shell) {
  const auto density = density_from_orbitals(table.grid(), config, orbitals, drop_shell);
  return exchange_matrix(table, density,
                         {l, config.model == Model::uhf ? spin : Spin::alpha});
}

FockMatrix assemble_fock(const kernels::KernelTable &table, double Z, const DensitySet &density,
                         const ChannelKey &channel) {
  const auto &grid = table.grid();
  if (!same_grid(grid, density.grid))
    throw GridMismatch();
  // RHF: 2U with U = V[sum (2l+1)|f|^2]; UHF: U = V[sum over both spins].
  // Both equal V applied to the total charge density.
  const Eigen::VectorXd direct =
      kernels::direct_potential_from_density(*grid, density.charge_density());
  FockMatrix F = local_matrix(grid, channel.l, Z, direct);
  F.exchange = exchange_matrix(table, density, channel);
  F.context = describe(channel, density.model);
  return F;
}

FockMatrix assemble_fock(const kernels::KernelTable &table, const Configuration &config,
                         const std::vector<RadialFunction> &orbitals, int l, Spin spin,
                         std::optional<int> drop_shell) {
  const auto density = density_from_orbitals(table.grid(), config, orbitals, drop_shell);
  const ChannelKey key{l, config.model == Model::uhf ? spin : Spin::alpha};
  FockMatrix F = assemble_fock(table, config.Z, density, key);
  if (drop_shell)
    F.context += fmt::format(" without shell {}", *drop_shell);
  return F;
}

//==============================================================================
std::vector<Eigenpair> lowest_eigenpairs(const FockMatrix &F, int count,
                                         const EigenOptions &options) {
  const int n = F.size();
  if (count < 1 || count > n)
    throw EigenError(fmt::format("lowest_eigenpairs: count {} outside [1, {}]", count, n));

  double f_norm = 0.0;
  for (int i = 0; i < n; ++i) {
    double row = std::fabs(F.diagonal[i]);
    if (i > 0)
      row += std::fabs(F.off_diagonal[i - 1]);
    if (i + 1 < n)
      row += std::fabs(F.off_diagonal[i]);
    f_norm = std::max(f_norm, row);
  }
  if (F.exchange)
    f_norm += linalg::inf_norm(*F.exchange);

  linalg::EigenResult result;
  Eigen::MatrixXd dense;
  if (!F.exchange) {
    result = linalg::tridiagonal_lowest(F.diagonal, F.off_diagonal, count);
  } else if (n <= options.dense_max_n) {
    dense = F.dense();
    result = linalg::dense_lowest(dense, count);
  } else {
    const double t_min = linalg::tridiagonal_lowest(F.diagonal, F.off_diagonal, 1).values[0];
    const double k_norm = linalg::inf_norm(*F.exchange);
    const double tolerance = std::min(options.absolute_tol, options.residual_tol * f_norm);
    Eigen::MatrixXd start;
    if (options.guess && options.guess->rows() == n && options.guess->cols() >= count)
      start = *options.guess;
    else
      start = linalg::tridiagonal_lowest(F.diagonal, F.off_diagonal, count).vectors;
    linalg::DavidsonOperator op;
    op.apply = [&](const Eigen::MatrixXd &X) {
      Eigen::MatrixXd Y = -(*F.exchange) * X;
      Y += F.diagonal.asDiagonal() * X;
      for (int i = 0; i + 1 < n; ++i) {
        Y.row(i) += F.off_diagonal[i] * X.row(i + 1);
        Y.row(i + 1) += F.off_diagonal[i] * X.row(i);
      }
      return Y;
    };
    op.precondition = [&](const Eigen::VectorXd &r, double theta) {
      // T >= F, so T - sigma is positive definite for sigma below both spectra
      const double sigma = std::min(theta, t_min) - 0.1 * (1.0 + std::fabs(theta));
      return linalg::tridiagonal_solve(F.diagonal, F.off_diagonal, sigma, r);
    };
    try {
      result = linalg::davidson_lowest(op, start, count, tolerance,
                                       options.max_davidson_iterations);
    } catch (const EigenError &) {
      dense = F.dense();
      // K is positive semidefinite, so lambda_min(T) - ||K|| bounds the spectrum below
      double shift = t_min - k_norm - 1e-3 * (1.0 + std::fabs(t_min));
      if (options.shift_hint && *options.shift_hint > shift)
        shift = *options.shift_hint;
      result = linalg::lanczos_lowest(dense, count, shift, options.residual_tol,
                                      options.max_lanczos_steps);
    }
  }

  std::vector<Eigenpair> pairs;
  pairs.reserve(count);
  for (int c = 0; c < count; ++c) {
    Eigen::VectorXd v = result.vectors.col(c);
    v.normalize();
    // sign convention: first non-negligible sample positive
    const double big = v.cwiseAbs().maxCoeff();
    for (int i = 0; i < n; ++i) {
      if (std::fabs(v[i]) > 1e-3 * big) {
        if (v[i] < 0.0)
          v = -v;
        break;
      }
    }
    const double value = result.values[c];
    const double res = (F.apply(v) - value * v).norm();
    if (res > options.residual_tol * f_norm)
      throw EigenError(fmt::format("{}: eigenpair {} residual {:.3e} exceeds {:.3e}", F.context,
                                   c, res, options.residual_tol * f_norm));
    pairs.push_back({value, from_scaled(F.grid, v), res});
  }
  return pairs;
}

} // namespace radhf
