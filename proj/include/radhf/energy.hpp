#pragma once

#include "radhf/configuration.hpp"
#include "radhf/grid.hpp"
#include "radhf/kernels.hpp"
#include "radhf/operators.hpp"

#include <Eigen/Dense>

#include <complex>
#include <optional>
#include <vector>

namespace radhf {

// Parts of a functional value. exchange is the magnitude of the exchange
// contribution, so total = kinetic + nuclear + direct - exchange.
struct EnergyBreakdown {
  double kinetic = 0.0; // includes the centrifugal term
  double nuclear = 0.0;
  double direct = 0.0;
  double exchange = 0.0;
  double total = 0.0;
};

template <typename T> using OrbitalSet = std::vector<BasicRadialFunction<T>>;

// sum_{a,b} w_a w_b conj(x_a) conj(y_b) M_ab u_a v_b, i.e. <x (x) y | M | u (x) v>
// for a real kernel matrix M on the grid.
template <typename T>
T pair_form(const Eigen::MatrixXd &M, const BasicRadialFunction<T> &x,
            const BasicRadialFunction<T> &y, const BasicRadialFunction<T> &u,
            const BasicRadialFunction<T> &v);

// Orbitals in the order of config.shells. For UHF the spin tags of the shells
// select the channel.
template <typename T>
EnergyBreakdown rhf_energy(const kernels::KernelTable &table, const Configuration &config,
                           const OrbitalSet<T> &orbitals);
template <typename T>
EnergyBreakdown uhf_energy(const kernels::KernelTable &table, const Configuration &config,
                           const OrbitalSet<T> &orbitals);

// UHF with separate lists, alpha in the order of the alpha shells of config,
// beta likewise.
template <typename T>
EnergyBreakdown uhf_energy(const kernels::KernelTable &table, const Configuration &config,
                           const OrbitalSet<T> &alpha, const OrbitalSet<T> &beta);

// Dispatches on config.model.
template <typename T>
EnergyBreakdown total_energy(const kernels::KernelTable &table, const Configuration &config,
                             const OrbitalSet<T> &orbitals);

// <g | H | f> for the Fock operator of channel (l, spin) built from the
// orbitals, optionally without shell drop_shell. RHF: h + 2U - K_l; UHF:
// h + U - K_l^spin.
template <typename T>
T fock_form(const kernels::KernelTable &table, const Configuration &config,
            const OrbitalSet<T> &orbitals, int l, Spin spin, std::optional<int> drop_shell,
            const BasicRadialFunction<T> &g, const BasicRadialFunction<T> &f);

// One shell split off the RHF functional:
//   E = E(without i) + 2(2l+1) <f_i|H^{(i)}|f_i> + (2l+1) <f_i (x) f_i|P_i|f_i (x) f_i>.
struct ShellDecomposition {
  double without_shell = 0.0;
  double single_shell = 0.0;
  double pair = 0.0;
  double sum() const { return without_shell + single_shell + pair; }
};

template <typename T>
ShellDecomposition decompose_shell(const kernels::KernelTable &table,
                                   const Configuration &config, const OrbitalSet<T> &orbitals,
                                   int i);

// Coefficients of E(.., (f_i + delta h)/sqrt(1 + lambda delta^2), ..) in delta
// and delta^2 (RHF).
template <typename T>
double first_order_coefficient(const kernels::KernelTable &table, const Configuration &config,
                               const OrbitalSet<T> &orbitals, int i,
                               const BasicRadialFunction<T> &h);
template <typename T>
double second_order_coefficient(const kernels::KernelTable &table,
                                const Configuration &config, const OrbitalSet<T> &orbitals,
                                int i, const BasicRadialFunction<T> &h, double lambda);

// 2 sum_j (2l_j+1) [ (1 - Z eps) ||f_j'||^2 - (Z/eps) ||f_j||^2 ], a lower
// bound of the RHF functional for every eps > 0.
template <typename T>
double lower_bound(const Configuration &config, const OrbitalSet<T> &orbitals, double eps);

// Functional of channel density matrices (see DensitySet). For densities of
// orthonormal orbitals this equals rhf_energy / uhf_energy.
EnergyBreakdown density_energy(const kernels::KernelTable &table, double Z,
                               const DensitySet &density);

#define RADHF_ENERGY_EXTERN(T)                                                                   \
  extern template T pair_form<T>(const Eigen::MatrixXd &, const BasicRadialFunction<T> &,     \
                                 const BasicRadialFunction<T> &,                               \
                                 const BasicRadialFunction<T> &,                               \
                                 const BasicRadialFunction<T> &);                              \
  extern template EnergyBreakdown rhf_energy<T>(const kernels::KernelTable &,                   \
                                                const Configuration &, const OrbitalSet<T> &); \
  extern template EnergyBreakdown uhf_energy<T>(const kernels::KernelTable &,                   \
                                                const Configuration &, const OrbitalSet<T> &); \
  extern template EnergyBreakdown uhf_energy<T>(const kernels::KernelTable &,                   \
                                                const Configuration &, const OrbitalSet<T> &,  \
                                                const OrbitalSet<T> &);                        \
  extern template EnergyBreakdown total_energy<T>(                                              \
      const kernels::KernelTable &, const Configuration &, const OrbitalSet<T> &);              \
  extern template T fock_form<T>(const kernels::KernelTable &, const Configuration &,          \
                                 const OrbitalSet<T> &, int, Spin, std::optional<int>,         \
                                 const BasicRadialFunction<T> &,                               \
                                 const BasicRadialFunction<T> &);                              \
  extern template ShellDecomposition decompose_shell<T>(                                        \
      const kernels::KernelTable &, const Configuration &, const OrbitalSet<T> &, int);         \
  extern template double first_order_coefficient<T>(                                            \
      const kernels::KernelTable &, const Configuration &, const OrbitalSet<T> &, int,          \
      const BasicRadialFunction<T> &);                                                          \
  extern template double second_order_coefficient<T>(                                           \
      const kernels::KernelTable &, const Configuration &, const OrbitalSet<T> &, int,          \
      const BasicRadialFunction<T> &, double);                                                  \
  extern template double lower_bound<T>(const Configuration &, const OrbitalSet<T> &, double);

RADHF_ENERGY_EXTERN(double)
RADHF_ENERGY_EXTERN(std::complex<double>)
#undef RADHF_ENERGY_EXTERN

} // namespace radhf
