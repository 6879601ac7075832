#include "radhf/angular.hpp"

#include "radhf/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>

#include <fmt/format.h>

namespace radhf::angular {

namespace {

bool selection_allowed(int l1, int l2, int l3) {
  if (l1 < 0 || l2 < 0 || l3 < 0)
    return false;
  if ((l1 + l2 + l3) % 2 != 0)
    return false;
  return l3 >= std::abs(l1 - l2) && l3 <= l1 + l2;
}

} // namespace

double wigner3j_zero_squared(int l1, int l2, int l3) {
  if (l1 < 0 || l2 < 0 || l3 < 0)
    throw std::invalid_argument("wigner3j_zero_squared: negative angular momentum");
  if (!selection_allowed(l1, l2, l3))
    return 0.0;

  // (J/2)!^2 (J-2a)!(J-2b)!(J-2c)! / ((J+1)! [(J/2-a)!(J/2-b)!(J/2-c)!]^2)
  const int J = l1 + l2 + l3;
  const int g = J / 2;
  auto lf = [](int n) { return std::lgamma(static_cast<long double>(n) + 1.0L); };
  const long double terms[] = {2.0L * lf(g),           lf(J - 2 * l1),
                               lf(J - 2 * l2),         lf(J - 2 * l3),
                               -lf(J + 1),             -2.0L * lf(g - l1),
                               -2.0L * lf(g - l2),     -2.0L * lf(g - l3)};
  long double log_value = 0.0L;
  long double magnitude = 0.0L;
  for (long double t : terms) {
    log_value += t;
    magnitude += std::fabs(t);
  }
  const long double rel_error =
      16.0L * std::numeric_limits<long double>::epsilon() * (magnitude + 1.0L);
  if (rel_error > 1e-12L)
    throw PrecisionError(fmt::format(
        "3j ({},{},{}): log-factorial evaluation too inaccurate ({:.2e})", l1, l2,
        l3, static_cast<double>(rel_error)));
  return static_cast<double>(std::exp(log_value));
}

double legendre_p(int n, double t) {
  if (n < 0)
    throw std::invalid_argument("legendre_p: negative degree");
  if (!(std::fabs(t) <= 1.0))
    throw std::domain_error(fmt::format("legendre_p: |t| = {} > 1", std::fabs(t)));
  if (n == 0)
    return 1.0;
  double p_prev = 1.0;
  double p = t;
  for (int k = 1; k < n; ++k) {
    const double next = ((2.0 * k + 1.0) * t * p - k * p_prev) / (k + 1.0);
    p_prev = p;
    p = next;
  }
  return p;
}

GaussRule gauss_legendre(int order) {
  if (order < 1)
    throw std::invalid_argument("gauss_legendre: order must be >= 1");
  // P_n(x) and P_{n-1}(x)
  auto evaluate = [order](double x) {
    double p0 = 1.0, p1 = x;
    for (int k = 1; k < order; ++k) {
      const double p2 = ((2.0 * k + 1.0) * x * p1 - k * p0) / (k + 1.0);
      p0 = p1;
      p1 = p2;
    }
    return std::pair{p1, p0};
  };
  GaussRule rule;
  rule.nodes.assign(order, 0.0);
  rule.weights.assign(order, 0.0);
  for (int i = 0; i < (order + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
    for (int iter = 0; iter < 100; ++iter) {
      const auto [p, q] = evaluate(x);
      const double dp = order * (x * p - q) / (x * x - 1.0);
      const double dx = p / dp;
      x -= dx;
      if (std::fabs(dx) < 1e-16)
        break;
    }
    const auto [p, q] = evaluate(x);
    const double dp = order * (x * p - q) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[order - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[order - 1 - i] = w;
  }
  if (order % 2 == 1)
    rule.nodes[order / 2] = 0.0;
  return rule;
}

//==============================================================================
CoefficientTable::CoefficientTable(int max_l) : max_l_(max_l) {
  if (max_l < 0)
    throw std::invalid_argument("CoefficientTable: negative max_l");
  const std::size_t side = static_cast<std::size_t>(max_l) + 1;
  entries_.assign(side * side * (2 * side - 1), 0.0);
  for (int l1 = 0; l1 <= max_l; ++l1)
    for (int l2 = 0; l2 <= max_l; ++l2)
      for (int k = 0; k <= l1 + l2; ++k)
        entries_[index(l1, l2, k)] = wigner3j_zero_squared(l1, l2, k);
}

std::size_t CoefficientTable::index(int l1, int l2, int k) const {
  const std::size_t side = static_cast<std::size_t>(max_l_) + 1;
  return (static_cast<std::size_t>(l1) * side + static_cast<std::size_t>(l2)) *
             (2 * side - 1) +
         static_cast<std::size_t>(k);
}

double CoefficientTable::operator()(int l1, int l2, int k) const {
  if (l1 < 0 || l2 < 0 || k < 0)
    throw std::invalid_argument("CoefficientTable: negative index");
  if (l1 > max_l_ || l2 > max_l_)
    throw std::out_of_range(fmt::format(
        "CoefficientTable: ({},{}) exceeds cached max_l = {}", l1, l2, max_l_));
  if (k > l1 + l2)
    return 0.0;
  return entries_[index(l1, l2, k)];
}

CoefficientTable CoefficientTable::with_override(int l1, int l2, int k,
                                                 double value) const {
  CoefficientTable copy = *this;
  if (l1 > max_l_ || l2 > max_l_ || k > l1 + l2 || l1 < 0 || l2 < 0 || k < 0)
    throw std::out_of_range("CoefficientTable::with_override: index out of range");
  copy.entries_[index(l1, l2, k)] = value;
  copy.entries_[index(l2, l1, k)] = value;
  return copy;
}

const CoefficientTable &CoefficientTable::shared(int max_l) {
  static std::mutex mutex;
  static std::vector<std::unique_ptr<CoefficientTable>> tables;
  std::lock_guard<std::mutex> lock(mutex);
  if (tables.empty() || tables.back()->max_l() < max_l)
    tables.push_back(std::make_unique<CoefficientTable>(std::max(max_l, 12)));
  return *tables.back();
}

} // namespace radhf::angular
