#include "radhf/energy.hpp"

#include <cmath>

#include <fmt/format.h>

namespace radhf {

namespace {

template <typename T> using Vec = Eigen::Matrix<T, Eigen::Dynamic, 1>;

template <typename T> Vec<T> apply_real(const Eigen::MatrixXd &M, const Vec<T> &y) {
  if constexpr (is_complex<T>::value) {
    const Eigen::VectorXd re = M * y.real();
    const Eigen::VectorXd im = M * y.imag();
    Vec<T> out(y.size());
    for (Eigen::Index i = 0; i < y.size(); ++i)
      out[i] = T(re[i], im[i]);
    return out;
  } else {
    return M * y;
  }
}

// w_a conj(x_a) u_a
template <typename T>
Vec<T> weighted_product(const BasicRadialFunction<T> &x, const BasicRadialFunction<T> &u) {
  const auto &grid = *x.grid();
  Vec<T> out(grid.size());
  for (int a = 0; a < grid.size(); ++a)
    out[a] = grid.weight(a) * conj_value(x[a]) * u[a];
  return out;
}

double electrons_per_orbital(Model model) { return model == Model::rhf ? 2.0 : 1.0; }

void check_orbitals(const Configuration &config, std::size_t count) {
  if (count != config.shells.size())
    throw Error(fmt::format("{} orbitals given for {} shells", count, config.shells.size()));
}

// Pointwise sum of occupancy-weighted |f_j|^2, optionally without one shell.
template <typename T>
Eigen::VectorXd charge(const Configuration &config, const OrbitalSet<T> &orbitals,
                       std::optional<int> skip) {
  const int n = orbitals.front().size();
  const double occ = electrons_per_orbital(config.model);
  Eigen::VectorXd rho = Eigen::VectorXd::Zero(n);
  for (int j = 0; j < static_cast<int>(orbitals.size()); ++j) {
    if (skip && *skip == j)
      continue;
    const double c = occ * config.degeneracy(j);
    for (int a = 0; a < n; ++a)
      rho[a] += c * abs2(orbitals[j][a]);
  }
  return rho;
}

bool exchanges(const Configuration &config, int j, Spin spin) {
  return config.model == Model::rhf || config.shells[j].spin == spin;
}

template <typename T>
EnergyBreakdown functional(const kernels::KernelTable &table, const Configuration &config,
                           const OrbitalSet<T> &orbitals) {
  check_orbitals(config, orbitals.size());
  EnergyBreakdown e;
  if (orbitals.empty())
    return e;
  const auto &grid = table.grid();
  for (const auto &f : orbitals)
    if (!same_grid(grid, f.grid()))
      throw GridMismatch();

  const double occ = electrons_per_orbital(config.model);
  const int s0 = static_cast<int>(orbitals.size());
  for (int j = 0; j < s0; ++j) {
    const double c = occ * config.degeneracy(j);
    e.kinetic += c * kinetic_quadratic_form(orbitals[j], config.shells[j].l);
    e.nuclear -= c * config.Z * coulomb_expectation(orbitals[j]);
  }

  const Eigen::VectorXd rho = charge(config, orbitals, std::nullopt);
  const Eigen::VectorXd v = kernels::direct_potential_from_density(*grid, rho);
  for (int a = 0; a < grid->size(); ++a)
    e.direct += 0.5 * grid->weight(a) * rho[a] * v[a];

  // RHF: sum_jk c_j c_k E_jk; UHF: 1/2 sum over same-spin pairs.
  const double x_factor = config.model == Model::rhf ? 1.0 : 0.5;
  for (int j = 0; j < s0; ++j) {
    for (int k = j; k < s0; ++k) {
      if (config.model == Model::uhf && config.shells[j].spin != config.shells[k].spin)
        continue;
      const Vec<T> x = weighted_product(orbitals[j], orbitals[k]);
      const Vec<T> xc = x.conjugate();
      const Vec<T> ux = apply_real(table.exchange(config.shells[j].l, config.shells[k].l), xc);
      const double ejk = real_part(T((x.array() * ux.array()).sum()));
      const double mult = j == k ? 1.0 : 2.0;
      e.exchange += x_factor * mult * config.degeneracy(j) * config.degeneracy(k) * ejk;
    }
  }
  e.total = e.kinetic + e.nuclear + e.direct - e.exchange;
  return e;
}

} // namespace

template <typename T>
T pair_form(const Eigen::MatrixXd &M, const BasicRadialFunction<T> &x,
            const BasicRadialFunction<T> &y, const BasicRadialFunction<T> &u,
            const BasicRadialFunction<T> &v) {
  require_same_grid(x, u);
  require_same_grid(y, v);
  require_same_grid(x, y);
  const Vec<T> left = weighted_product(x, u);
  const Vec<T> right = apply_real(M, weighted_product(y, v));
  return (left.array() * right.array()).sum();
}

template <typename T>
EnergyBreakdown rhf_energy(const kernels::KernelTable &table, const Configuration &config,
                           const OrbitalSet<T> &orbitals) {
  if (config.model != Model::rhf)
    throw Error("rhf_energy: configuration is not RHF");
  return functional(table, config, orbitals);
}

template <typename T>
EnergyBreakdown uhf_energy(const kernels::KernelTable &table, const Configuration &config,
                           const OrbitalSet<T> &orbitals) {
  if (config.model != Model::uhf)
    throw Error("uhf_energy: configuration is not UHF");
  return functional(table, config, orbitals);
}

template <typename T>
EnergyBreakdown uhf_energy(const kernels::KernelTable &table, const Configuration &config,
                           const OrbitalSet<T> &alpha, const OrbitalSet<T> &beta) {
  OrbitalSet<T> merged;
  std::size_t ia = 0, ib = 0;
  for (const auto &s : config.shells) {
    if (s.spin == Spin::alpha) {
      if (ia >= alpha.size())
        throw Error("uhf_energy: too few alpha orbitals");
      merged.push_back(alpha[ia++]);
    } else {
      if (ib >= beta.size())
        throw Error("uhf_energy: too few beta orbitals");
      merged.push_back(beta[ib++]);
    }
  }
  if (ia != alpha.size() || ib != beta.size())
    throw Error("uhf_energy: orbital lists do not match the alpha/beta shells");
  return uhf_energy(table, config, merged);
}

template <typename T>
EnergyBreakdown total_energy(const kernels::KernelTable &table, const Configuration &config,
                             const OrbitalSet<T> &orbitals) {
  return functional(table, config, orbitals);
}

template <typename T>
T fock_form(const kernels::KernelTable &table, const Configuration &config,
            const OrbitalSet<T> &orbitals, int l, Spin spin, std::optional<int> drop_shell,
            const BasicRadialFunction<T> &g, const BasicRadialFunction<T> &f) {
  check_orbitals(config, orbitals.size());
  require_same_grid(g, f);
  const auto &grid = *g.grid();
  const int n = grid.size();

  T value = kinetic_bilinear_form(g, f, l);
  for (int a = 0; a < n; ++a)
    value -= config.Z * grid.weight(a) * conj_value(g[a]) * f[a] / grid.r(a);
  if (orbitals.empty())
    return value;

  // charge() already carries the RHF factor 2 of the direct term
  const Eigen::VectorXd v =
      kernels::direct_potential_from_density(grid, charge(config, orbitals, drop_shell));
  for (int a = 0; a < n; ++a)
    value += grid.weight(a) * conj_value(g[a]) * v[a] * f[a];

  for (int j = 0; j < static_cast<int>(orbitals.size()); ++j) {
    if ((drop_shell && *drop_shell == j) || !exchanges(config, j, spin))
      continue;
    value -= static_cast<double>(config.degeneracy(j)) *
             pair_form(table.exchange(l, config.shells[j].l), g, orbitals[j], orbitals[j], f);
  }
  return value;
}

template <typename T>
ShellDecomposition decompose_shell(const kernels::KernelTable &table,
                                   const Configuration &config, const OrbitalSet<T> &orbitals,
                                   int i) {
  if (config.model != Model::rhf)
    throw Error("decompose_shell: RHF configurations only");
  check_orbitals(config, orbitals.size());
  if (i < 0 || i >= static_cast<int>(orbitals.size()))
    throw Error(fmt::format("decompose_shell: shell index {} out of range", i));
  const int l = config.shells[i].l;
  const double c = 2 * l + 1;
  const auto &f = orbitals[i];

  ShellDecomposition d;
  OrbitalSet<T> rest = orbitals;
  rest.erase(rest.begin() + i);
  d.without_shell = functional(table, config.without_shell(i), rest).total;
  d.single_shell =
      2.0 * c * real_part(fock_form(table, config, orbitals, l, Spin::alpha, i, f, f));
  d.pair = c * real_part(pair_form(table.p_matrix(l), f, f, f, f));
  return d;
}

template <typename T>
double first_order_coefficient(const kernels::KernelTable &table, const Configuration &config,
                               const OrbitalSet<T> &orbitals, int i,
                               const BasicRadialFunction<T> &h) {
  const int l = config.shells.at(i).l;
  return 4.0 * (2 * l + 1) *
         real_part(fock_form(table, config, orbitals, l, Spin::alpha, std::nullopt, h,
                             orbitals[i]));
}

template <typename T>
double second_order_coefficient(const kernels::KernelTable &table,
                                const Configuration &config, const OrbitalSet<T> &orbitals,
                                int i, const BasicRadialFunction<T> &h, double lambda) {
  if (config.model != Model::rhf)
    throw Error("second_order_coefficient: RHF configurations only");
  check_orbitals(config, orbitals.size());
  const int l = config.shells.at(i).l;
  const auto &f = orbitals[i];
  const Eigen::MatrixXd P = table.p_matrix(l);

  double s = real_part(fock_form(table, config, orbitals, l, Spin::alpha, i, h, h));
  if (lambda != 0.0)
    s -= lambda *
         real_part(fock_form(table, config, orbitals, l, Spin::alpha, std::nullopt, f, f));
  s += real_part(pair_form(P, h, h, f, f));
  s += real_part(pair_form(P, f, h, f, h));
  s += real_part(pair_form(P, h, f, f, h));
  return 2.0 * (2 * l + 1) * s;
}

template <typename T>
double lower_bound(const Configuration &config, const OrbitalSet<T> &orbitals, double eps) {
  if (!(eps > 0.0))
    throw Error("lower_bound: eps must be positive");
  check_orbitals(config, orbitals.size());
  double s = 0.0;
  for (std::size_t j = 0; j < orbitals.size(); ++j) {
    const double norm2 = orbitals[j].norm() * orbitals[j].norm();
    s += config.degeneracy(static_cast<int>(j)) *
         ((1.0 - config.Z * eps) * derivative_norm_squared(orbitals[j]) -
          config.Z / eps * norm2);
  }
  return 2.0 * s;
}

EnergyBreakdown density_energy(const kernels::KernelTable &table, double Z,
                               const DensitySet &density) {
  const auto &grid = *density.grid;
  const int n = grid.size();
  const auto dr = grid.spacings();
  const double occ = electrons_per_orbital(density.model);
  EnergyBreakdown e;

  for (const auto &[key, gamma] : density.gamma) {
    const double c = occ * (2 * key.l + 1);
    const double centrifugal = key.l * (key.l + 1.0);
    double kin = 0.0, nuc = 0.0;
    for (int a = 0; a < n; ++a) {
      const double r = grid.r(a);
      kin += ((1.0 / dr[a] + 1.0 / dr[a + 1]) / grid.weight(a) + centrifugal / (r * r)) *
             gamma(a, a);
      nuc -= Z / r * gamma(a, a);
    }
    for (int a = 0; a + 1 < n; ++a)
      kin -= 2.0 * gamma(a, a + 1) /
             (dr[a + 1] * std::sqrt(grid.weight(a) * grid.weight(a + 1)));
    e.kinetic += c * kin;
    e.nuclear += c * nuc;
  }

  const Eigen::VectorXd rho = density.charge_density();
  const Eigen::VectorXd v = kernels::direct_potential_from_density(grid, rho);
  for (int a = 0; a < n; ++a)
    e.direct += 0.5 * grid.weight(a) * rho[a] * v[a];

  const double x_factor = density.model == Model::rhf ? 1.0 : 0.5;
  for (auto it = density.gamma.begin(); it != density.gamma.end(); ++it) {
    for (auto jt = it; jt != density.gamma.end(); ++jt) {
      if (density.model == Model::uhf && it->first.spin != jt->first.spin)
        continue;
      const auto &U = table.exchange(it->first.l, jt->first.l);
      const double x = (U.array() * it->second.array() * jt->second.array()).sum();
      const double mult = it == jt ? 1.0 : 2.0;
      e.exchange += x_factor * mult * (2 * it->first.l + 1) * (2 * jt->first.l + 1) * x;
    }
  }
  e.total = e.kinetic + e.nuclear + e.direct - e.exchange;
  return e;
}

#define RADHF_ENERGY_INSTANTIATE(T)                                                              \
  template T pair_form<T>(const Eigen::MatrixXd &, const BasicRadialFunction<T> &,            \
                          const BasicRadialFunction<T> &, const BasicRadialFunction<T> &,     \
                          const BasicRadialFunction<T> &);                                     \
  template EnergyBreakdown rhf_energy<T>(const kernels::KernelTable &, const Configuration &,  \
                                         const OrbitalSet<T> &);                               \
  template EnergyBreakdown uhf_energy<T>(const kernels::KernelTable &, const Configuration &,  \
                                         const OrbitalSet<T> &);                               \
  template EnergyBreakdown uhf_energy<T>(const kernels::KernelTable &, const Configuration &,  \
                                         const OrbitalSet<T> &, const OrbitalSet<T> &);        \
  template EnergyBreakdown total_energy<T>(const kernels::KernelTable &, const Configuration &, \
                                           const OrbitalSet<T> &);                             \
  template T fock_form<T>(const kernels::KernelTable &, const Configuration &,                 \
                          const OrbitalSet<T> &, int, Spin, std::optional<int>,                \
                          const BasicRadialFunction<T> &, const BasicRadialFunction<T> &);     \
  template ShellDecomposition decompose_shell<T>(const kernels::KernelTable &,                 \
                                                 const Configuration &, const OrbitalSet<T> &, \
                                                 int);                                         \
  template double first_order_coefficient<T>(const kernels::KernelTable &,                     \
                                             const Configuration &, const OrbitalSet<T> &,     \
                                             int, const BasicRadialFunction<T> &);             \
  template double second_order_coefficient<T>(const kernels::KernelTable &,                    \
                                              const Configuration &, const OrbitalSet<T> &,    \
                                              int, const BasicRadialFunction<T> &, double);    \
  template double lower_bound<T>(const Configuration &, const OrbitalSet<T> &, double);

RADHF_ENERGY_INSTANTIATE(double)
RADHF_ENERGY_INSTANTIATE(std::complex<double>)

} // namespace radhf
