#pragma once

#include "radhf/configuration.hpp"
#include "radhf/eigensolver.hpp"
#include "radhf/grid.hpp"
#include "radhf/kernels.hpp"

#include <Eigen/Dense>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace radhf {

// Matrices act on scaled samples g_i = sqrt(w_i) f(r_i), in which the grid
// inner product is the Euclidean one and every operator is a real
// symmetric matrix. These helpers convert both ways.
Eigen::VectorXd to_scaled(const RadialFunction &f);
RadialFunction from_scaled(const GridPtr &grid, const Eigen::VectorXd &g);

// Channel of a Fock operator: angular momentum plus, for UHF, the spin.
// RHF channels always carry Spin::alpha.
struct ChannelKey {
  int l = 0;
  Spin spin = Spin::alpha;
  auto operator<=>(const ChannelKey &) const = default;
};

std::string describe(const ChannelKey &key, Model model);

// Channel density matrices Gamma = sum_j g_j g_j^T over the orbitals of the
// channel, in scaled samples. Occupancy weights (2l+1, and the RHF factor 2)
// are applied where the densities are used, not stored.
struct DensitySet {
  GridPtr grid;
  Model model = Model::rhf;
  std::map<ChannelKey, Eigen::MatrixXd> gamma;

  // (1 - alpha) this + alpha other, channel by channel.
  DensitySet mixed(const DensitySet &other, double alpha) const;

  // Pointwise radial charge density of the configuration, sum over shells of
  // (electrons per orbital) (2l+1) |f|^2; excludes nothing.
  Eigen::VectorXd charge_density() const;

  // Same, restricted to one spin (UHF only).
  Eigen::VectorXd spin_density(Spin spin) const;
};

DensitySet density_from_orbitals(const GridPtr &grid, const Configuration &config,
                                 const std::vector<RadialFunction> &orbitals,
                                 std::optional<int> drop_shell = std::nullopt);

// Real symmetric Fock matrix F = T - K in scaled samples, with T the
// tridiagonal local part (kinetic, centrifugal, nuclear and direct terms)
// and K the dense exchange part (absent for purely local operators).
struct FockMatrix {
  GridPtr grid;
  int l = 0;
  std::string context;
  Eigen::VectorXd diagonal;
  Eigen::VectorXd off_diagonal;
  Eigen::VectorXd direct;              // direct potential included in diagonal, pointwise
  std::optional<Eigen::MatrixXd> exchange;

  int size() const { return static_cast<int>(diagonal.size()); }
  Eigen::MatrixXd dense() const;
  Eigen::VectorXd apply(const Eigen::VectorXd &g) const;
  double quadratic_form(const RadialFunction &f) const;
  double bilinear_form(const RadialFunction &g, const RadialFunction &f) const;
  // ||F f - <f|F|f> f|| / ||f|| in the grid norm; 0 for f = 0.
  double residual(const RadialFunction &f) const;
};

// -d^2/dr^2 + l(l+1)/r^2 - Z/r with Dirichlet ends.
FockMatrix hydrogenic_matrix(const GridPtr &grid, int l, double Z);

// Pointwise U(r_a) = sum_j weight_j int |f_j(s)|^2 / max(r_a, s) ds.
struct WeightedOrbital {
  const RadialFunction *orbital;
  double weight;
};
Eigen::VectorXd direct_potential(const GridPtr &grid, const std::vector<WeightedOrbital> &orbitals);

// Scaled exchange matrix K_l (symmetric, positive semidefinite) for the
// orbitals of the configuration that exchange with channel (l, spin):
// every shell for RHF, same-spin shells for UHF.
Eigen::MatrixXd exchange_matrix(const kernels::KernelTable &table, const Configuration &config,
                                const std::vector<RadialFunction> &orbitals, int l,
                                Spin spin = Spin::alpha,
                                std::optional<int> drop_shell = std::nullopt);

// Scaled exchange matrix from channel densities.
Eigen::MatrixXd exchange_matrix(const kernels::KernelTable &table, const DensitySet &density,
                                const ChannelKey &channel);

// RHF: h + 2U - K_l.  UHF: h + U - K_l^spin, U summed over both spins.
// drop_shell removes that shell from U and K (the operator H^{(i)}).
FockMatrix assemble_fock(const kernels::KernelTable &table, const Configuration &config,
                         const std::vector<RadialFunction> &orbitals, int l,
                         Spin spin = Spin::alpha, std::optional<int> drop_shell = std::nullopt);

FockMatrix assemble_fock(const kernels::KernelTable &table, double Z, const DensitySet &density,
                         const ChannelKey &channel);

// Solver routes: tridiagonal LAPACK for local operators, dense LAPACK up to
// dense_max_n, otherwise block Davidson preconditioned by the local part,
// falling back to shift-invert Lanczos.
struct EigenOptions {
  int dense_max_n = 800;
  double residual_tol = 1e-10;  // relative to ||F||_inf; the returned pairs satisfy it
  double absolute_tol = 1e-9;   // iterative solvers also stop no later than this
  int max_davidson_iterations = 300;
  int max_lanczos_steps = 600;
  std::optional<double> shift_hint;     // believed to lie below the spectrum
  std::optional<Eigen::MatrixXd> guess; // scaled start vectors for Davidson
};

struct Eigenpair {
  double value = 0.0;
  RadialFunction function; // unit grid norm, positive near the origin
  double residual = 0.0;   // ||F g - value g|| in scaled samples
};

std::vector<Eigenpair> lowest_eigenpairs(const FockMatrix &F, int count,
                                         const EigenOptions &options = {});

} // namespace radhf
