#include "radhf/grid.hpp"

#include <bit>
#include <cmath>

#include <fmt/format.h>

namespace radhf {

std::string to_string(GridKind kind) {
  return kind == GridKind::uniform ? "uniform" : "exponential";
}

GridKind grid_kind_from_string(const std::string &name) {
  if (name == "uniform")
    return GridKind::uniform;
  if (name == "exponential")
    return GridKind::exponential;
  throw Error(fmt::format("unknown grid kind '{}'", name));
}

RadialGrid::RadialGrid(GridKind kind, int n, double r_max, double gamma)
    : kind_(kind), r_max_(r_max), gamma_(kind == GridKind::uniform ? 0.0 : gamma) {
  if (n < 16)
    throw Error(fmt::format("grid needs at least 16 points, got {}", n));
  if (!(r_max > 0.0) || !std::isfinite(r_max))
    throw Error(fmt::format("grid r_max must be positive, got {}", r_max));
  if (kind == GridKind::exponential && !(gamma > 0.0))
    throw Error(fmt::format("exponential grid needs gamma > 0, got {}", gamma));

  // nodes including both endpoints
  std::vector<double> nodes(n + 2);
  for (int i = 0; i <= n + 1; ++i) {
    const double x = static_cast<double>(i) / (n + 1);
    if (kind == GridKind::uniform)
      nodes[i] = r_max * x;
    else
      nodes[i] = r_max * std::expm1(gamma * x) / std::expm1(gamma);
  }
  nodes.front() = 0.0;
  nodes.back() = r_max;

  r_.assign(nodes.begin() + 1, nodes.end() - 1);
  dr_.resize(n + 1);
  for (int i = 0; i <= n; ++i)
    dr_[i] = nodes[i + 1] - nodes[i];
  w_.resize(n);
  for (int i = 0; i < n; ++i)
    w_[i] = 0.5 * (dr_[i] + dr_[i + 1]);
  w_first_ = 0.5 * dr_.front();
  w_last_ = 0.5 * dr_.back();
}

double RadialGrid::integrate(const std::function<double(double)> &fn) const {
  double s = w_first_ * fn(0.0) + w_last_ * fn(r_max_);
  for (std::size_t i = 0; i < r_.size(); ++i)
    s += w_[i] * fn(r_[i]);
  return s;
}

std::uint64_t RadialGrid::hash() const {
  // FNV-1a over the defining parameters
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&h](std::uint64_t v) {
    for (int b = 0; b < 8; ++b) {
      h ^= (v >> (8 * b)) & 0xffu;
      h *= 1099511628211ull;
    }
  };
  mix(static_cast<std::uint64_t>(kind_));
  mix(static_cast<std::uint64_t>(r_.size()));
  mix(std::bit_cast<std::uint64_t>(r_max_));
  mix(std::bit_cast<std::uint64_t>(gamma_));
  return h;
}

bool RadialGrid::operator==(const RadialGrid &other) const {
  return kind_ == other.kind_ && r_.size() == other.r_.size() &&
         r_max_ == other.r_max_ && gamma_ == other.gamma_;
}

GridPtr make_grid(GridKind kind, int n, double r_max, double gamma) {
  return std::make_shared<const RadialGrid>(kind, n, r_max, gamma);
}

bool same_grid(const GridPtr &a, const GridPtr &b) {
  if (!a || !b)
    return false;
  return a == b || *a == *b;
}

MemoryBudgetError::MemoryBudgetError(std::size_t required, std::size_t budget)
    : Error(fmt::format("kernel table needs {} bytes, budget is {} bytes", required,
                        budget)),
      required_bytes(required), budget_bytes(budget) {}

} // namespace radhf
