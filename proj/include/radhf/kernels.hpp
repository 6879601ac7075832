#pragma once

#include "radhf/angular.hpp"
#include "radhf/grid.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <filesystem>
#include <vector>

namespace radhf::kernels {

// Exchange kernel U_{l l'}(r,s) = sum_k (l l' k; 0 0 0)^2 r_<^k / r_>^{k+1}.
double u_kernel(int l, int lp, double r, double s);
double u_kernel(const angular::CoefficientTable &coefficients, int l, int lp, double r,
                double s);

// Shell self-interaction kernel (2l+1) (2 / r_> - U_{ll}(r,s)).
double p_kernel(int l, double r, double s);

struct OracleResult {
  double value;
  double error_estimate;
};

// Independent evaluation of U_{l l'}(r,s) as the angular integral
//   1/2 int_{-1}^{1} P_l(t) P_l'(t) (r^2 + s^2 - 2 r s t)^{-1/2} dt.
// The substitution x = |r xhat - s yhat| turns the integrand into a
// polynomial in x on [|r-s|, r+s], so r = s needs no special treatment.
// The error estimate compares two quadrature orders; throws Error when it
// exceeds tolerance.
OracleResult oracle_u_kernel(int l, int lp, double r, double s, int quadrature_order,
                             double tolerance = 1e-12);

struct TableOptions {
  std::size_t memory_budget_bytes = std::size_t{1} << 30;
  const angular::CoefficientTable *coefficients = nullptr; // default: shared table
};

// Dense kernel matrices on a grid: direct 1/max(r_i, r_j) and U_{l l'} for
// every l <= l' <= max_l. Immutable after construction.
class KernelTable {
public:
  KernelTable(GridPtr grid, int max_l, const TableOptions &options = {});

  const GridPtr &grid() const { return grid_; }
  int max_l() const { return max_l_; }
  int size() const { return grid_->size(); }

  const Eigen::MatrixXd &direct() const { return direct_; }
  const Eigen::MatrixXd &exchange(int l, int lp) const;

  // (2l+1)(2 direct - U_ll)
  Eigen::MatrixXd p_matrix(int l) const;

  static std::size_t required_bytes(int n, int max_l);

  // Little-endian dump: magic "RADHFKRN", u32 version, u32 n, u32 max_l,
  // u64 grid hash, then the direct matrix and each U_{l l'} (l <= l', l
  // outer) as n*n float64 in row-major order.
  void save(const std::filesystem::path &path) const;
  static KernelTable load(const std::filesystem::path &path, GridPtr grid, int max_l);

  // Loads from cache_dir when a matching file exists, otherwise builds and saves.
  static KernelTable cached(const std::filesystem::path &cache_dir, GridPtr grid, int max_l,
                            const TableOptions &options = {});

private:
  KernelTable() = default;
  static std::size_t pair_index(int l, int lp, int max_l);

  GridPtr grid_;
  int max_l_ = 0;
  Eigen::MatrixXd direct_;
  std::vector<Eigen::MatrixXd> exchange_;
};

// Pointwise direct potential V(r_a) = sum_b w_b rho_b / max(r_a, r_b), by two
// cumulative sums. Equal to direct() * (w .* rho) up to rounding.
Eigen::VectorXd direct_potential_from_density(const RadialGrid &grid,
                                              const Eigen::VectorXd &rho);

} // namespace radhf::kernels
