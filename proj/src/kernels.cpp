#include "radhf/kernels.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace radhf::kernels {

namespace {

// U_{l l'} at r_< / r_> = x, scaled by r_>: sum_k c_k x^k
double angular_series(const angular::CoefficientTable &c, int l, int lp, double x) {
  const auto [k_min, k_max] = angular::coupling_range(l, lp);
  double sum = 0.0;
  double xk = std::pow(x, k_min);
  const double x2 = x * x;
  for (int k = k_min; k <= k_max; k += 2) {
    sum += c(l, lp, k) * xk;
    xk *= x2;
  }
  return sum;
}

} // namespace

double u_kernel(const angular::CoefficientTable &coefficients, int l, int lp, double r,
                double s) {
  const double r_big = std::max(r, s);
  const double r_small = std::min(r, s);
  return angular_series(coefficients, l, lp, r_small / r_big) / r_big;
}

double u_kernel(int l, int lp, double r, double s) {
  return u_kernel(angular::CoefficientTable::shared(std::max(l, lp)), l, lp, r, s);
}

double p_kernel(int l, double r, double s) {
  return (2 * l + 1) * (2.0 / std::max(r, s) - u_kernel(l, l, r, s));
}

OracleResult oracle_u_kernel(int l, int lp, double r, double s, int quadrature_order,
                             double tolerance) {
  if (!(r > 0.0 && s > 0.0))
    throw Error("oracle_u_kernel: radii must be positive");
  const double a = std::fabs(r - s);
  const double b = r + s;
  auto integrate = [&](int order) {
    const auto rule = angular::gauss_legendre(order);
    double sum = 0.0;
    for (int q = 0; q < order; ++q) {
      const double x = 0.5 * (b - a) * rule.nodes[q] + 0.5 * (b + a);
      const double t = std::clamp((r * r + s * s - x * x) / (2.0 * r * s), -1.0, 1.0);
      sum += rule.weights[q] * angular::legendre_p(l, t) * angular::legendre_p(lp, t);
    }
    // dt / |r xhat - s yhat| = -dx / (r s)
    return 0.5 * (b - a) * sum / (2.0 * r * s);
  };
  const double coarse = integrate(quadrature_order);
  const double fine = integrate(quadrature_order + 8);
  OracleResult result{fine, std::fabs(fine - coarse)};
  if (result.error_estimate > tolerance)
    throw Error(fmt::format("oracle_u_kernel({},{},{},{}): error estimate {:.3e} > {:.3e}", l,
                            lp, r, s, result.error_estimate, tolerance));
  return result;
}

//==============================================================================
std::size_t KernelTable::pair_index(int l, int lp, int max_l) {
  if (l > lp)
    std::swap(l, lp);
  // rows l = 0..max_l hold entries lp = l..max_l
  return static_cast<std::size_t>(l * (max_l + 1) - l * (l - 1) / 2 + (lp - l));
}

std::size_t KernelTable::required_bytes(int n, int max_l) {
  const std::size_t pairs = static_cast<std::size_t>(max_l + 1) * (max_l + 2) / 2;
  return (pairs + 1) * static_cast<std::size_t>(n) * static_cast<std::size_t>(n) *
         sizeof(double);
}

KernelTable::KernelTable(GridPtr grid, int max_l, const TableOptions &options)
    : grid_(std::move(grid)), max_l_(max_l) {
  if (max_l < 0)
    throw Error("KernelTable: negative max_l");
  const int n = grid_->size();
  const std::size_t bytes = required_bytes(n, max_l);
  if (bytes > options.memory_budget_bytes)
    throw MemoryBudgetError(bytes, options.memory_budget_bytes);

  const auto &coefficients = options.coefficients
                                 ? *options.coefficients
                                 : angular::CoefficientTable::shared(max_l);
  if (coefficients.max_l() < max_l)
    throw Error("KernelTable: coefficient table too small for max_l");

  const auto r = grid_->points();
  direct_.resize(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      direct_(i, j) = 1.0 / std::max(r[i], r[j]);

  const std::size_t pairs = static_cast<std::size_t>(max_l + 1) * (max_l + 2) / 2;
  exchange_.resize(pairs);
  for (int l = 0; l <= max_l; ++l) {
    for (int lp = l; lp <= max_l; ++lp) {
      Eigen::MatrixXd &u = exchange_[pair_index(l, lp, max_l)];
      u.resize(n, n);
      for (int j = 0; j < n; ++j) {
        for (int i = j; i < n; ++i) {
          // r_i >= r_j
          const double value = angular_series(coefficients, l, lp, r[j] / r[i]) / r[i];
          u(i, j) = value;
          u(j, i) = value;
        }
      }
    }
  }
}

const Eigen::MatrixXd &KernelTable::exchange(int l, int lp) const {
  if (l < 0 || lp < 0 || l > max_l_ || lp > max_l_)
    throw Error(fmt::format("KernelTable: no exchange kernel for ({},{}); max_l = {}", l, lp,
                            max_l_));
  return exchange_[pair_index(l, lp, max_l_)];
}

Eigen::MatrixXd KernelTable::p_matrix(int l) const {
  return (2 * l + 1) * (2.0 * direct_ - exchange(l, l));
}

Eigen::VectorXd direct_potential_from_density(const RadialGrid &grid,
                                              const Eigen::VectorXd &rho) {
  const int n = grid.size();
  Eigen::VectorXd v(n);
  // inner[a] = sum_{b <= a} w_b rho_b ; outer[a] = sum_{b > a} w_b rho_b / r_b
  double inner = 0.0;
  std::vector<double> inner_sum(n);
  for (int a = 0; a < n; ++a) {
    inner += grid.weight(a) * rho[a];
    inner_sum[a] = inner;
  }
  double outer = 0.0;
  for (int a = n - 1; a >= 0; --a) {
    v[a] = inner_sum[a] / grid.r(a) + outer;
    outer += grid.weight(a) * rho[a] / grid.r(a);
  }
  return v;
}

} // namespace radhf::kernels
