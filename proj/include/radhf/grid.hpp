#pragma once

#include "radhf/errors.hpp"

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

namespace radhf {

enum class GridKind { uniform, exponential };

std::string to_string(GridKind kind);
GridKind grid_kind_from_string(const std::string &name);

// Discretization of (0, r_max). The n interior points carry samples; the
// endpoints r_0 = 0 and r_{n+1} = r_max are implicit Dirichlet nodes.
//
// Uniform:      r_i = i h, h = r_max / (n + 1).
// Exponential:  r_i = r_max (exp(gamma x_i) - 1) / (exp(gamma) - 1), x_i = i / (n + 1).
//
// Weights are those of the closed trapezoidal rule on the n + 2 nodes,
// restricted to the interior; endpoint weights are kept separately so that
// integrate() can handle functions that do not vanish at the ends.
class RadialGrid {
public:
  RadialGrid(GridKind kind, int n, double r_max, double gamma = 6.0);

  GridKind kind() const { return kind_; }
  int size() const { return static_cast<int>(r_.size()); }
  double r_max() const { return r_max_; }
  double gamma() const { return gamma_; }

  double r(int i) const { return r_[i]; }
  double weight(int i) const { return w_[i]; }
  std::span<const double> points() const { return r_; }
  std::span<const double> weights() const { return w_; }

  // Spacing r_{i+1} - r_i for i = 0..n (n+1 intervals, r_0 = 0, r_{n+1} = r_max).
  std::span<const double> spacings() const { return dr_; }

  // Closed trapezoidal rule for a function given analytically; includes the
  // endpoint nodes, so constants and linear functions integrate exactly.
  double integrate(const std::function<double(double)> &fn) const;

  // Stable identity of the discretization, used for kernel caches.
  std::uint64_t hash() const;

  bool operator==(const RadialGrid &other) const;

private:
  GridKind kind_;
  double r_max_;
  double gamma_;
  std::vector<double> r_;
  std::vector<double> w_;
  std::vector<double> dr_;
  double w_first_ = 0.0; // weight of r_0 = 0
  double w_last_ = 0.0;  // weight of r_{n+1} = r_max
};

using GridPtr = std::shared_ptr<const RadialGrid>;

// Validated factory: n >= 16, r_max > 0.
GridPtr make_grid(GridKind kind, int n, double r_max, double gamma = 6.0);

template <typename T> struct is_complex : std::false_type {};
template <typename T> struct is_complex<std::complex<T>> : std::true_type {};

template <typename T> inline auto conj_value(const T &x) {
  if constexpr (is_complex<T>::value)
    return std::conj(x);
  else
    return x;
}

template <typename T> inline double abs2(const T &x) {
  if constexpr (is_complex<T>::value)
    return std::norm(x);
  else
    return x * x;
}

template <typename T> inline double real_part(const T &x) {
  if constexpr (is_complex<T>::value)
    return x.real();
  else
    return x;
}

// Samples f(r_i) of a reduced radial function with implicit zero boundary values.
template <typename T> class BasicRadialFunction {
public:
  using value_type = T;

  BasicRadialFunction() = default;
  explicit BasicRadialFunction(GridPtr grid)
      : grid_(std::move(grid)), values_(grid_->size(), T{}) {}
  BasicRadialFunction(GridPtr grid, std::vector<T> values)
      : grid_(std::move(grid)), values_(std::move(values)) {
    if (static_cast<int>(values_.size()) != grid_->size())
      throw Error("RadialFunction: sample count does not match the grid");
  }

  static BasicRadialFunction sample(GridPtr grid, const std::function<T(double)> &fn) {
    std::vector<T> v(grid->size());
    for (int i = 0; i < grid->size(); ++i)
      v[i] = fn(grid->r(i));
    return BasicRadialFunction(std::move(grid), std::move(v));
  }

  const GridPtr &grid() const { return grid_; }
  int size() const { return static_cast<int>(values_.size()); }
  std::span<const T> values() const { return values_; }
  std::span<T> values() { return values_; }
  const T &operator[](int i) const { return values_[i]; }
  T &operator[](int i) { return values_[i]; }

  double norm() const;
  bool is_zero() const {
    for (const T &x : values_)
      if (x != T{})
        return false;
    return true;
  }

  BasicRadialFunction &operator*=(T s) {
    for (T &x : values_)
      x *= s;
    return *this;
  }
  BasicRadialFunction &operator+=(const BasicRadialFunction &o);
  BasicRadialFunction &operator-=(const BasicRadialFunction &o);

  friend BasicRadialFunction operator*(T s, BasicRadialFunction f) { return f *= s; }
  friend BasicRadialFunction operator+(BasicRadialFunction a, const BasicRadialFunction &b) {
    return a += b;
  }
  friend BasicRadialFunction operator-(BasicRadialFunction a, const BasicRadialFunction &b) {
    return a -= b;
  }

  template <typename U> BasicRadialFunction<U> cast() const {
    std::vector<U> v(values_.begin(), values_.end());
    return BasicRadialFunction<U>(grid_, std::move(v));
  }

private:
  GridPtr grid_;
  std::vector<T> values_;
};

using RadialFunction = BasicRadialFunction<double>;
using ComplexRadialFunction = BasicRadialFunction<std::complex<double>>;

// Functions are compatible when they share a grid object or equal grids.
bool same_grid(const GridPtr &a, const GridPtr &b);

template <typename T>
inline void require_same_grid(const BasicRadialFunction<T> &a,
                              const BasicRadialFunction<T> &b) {
  if (!same_grid(a.grid(), b.grid()))
    throw GridMismatch();
}

// Quadrature of conj(f) g.
template <typename T> T inner(const BasicRadialFunction<T> &f, const BasicRadialFunction<T> &g) {
  require_same_grid(f, g);
  const auto &grid = *f.grid();
  T sum{};
  for (int i = 0; i < grid.size(); ++i)
    sum += grid.weight(i) * conj_value(f[i]) * g[i];
  return sum;
}

template <typename T> double BasicRadialFunction<T>::norm() const {
  double s = 0.0;
  for (int i = 0; i < grid_->size(); ++i)
    s += grid_->weight(i) * abs2(values_[i]);
  return std::sqrt(s);
}

template <typename T>
BasicRadialFunction<T> &BasicRadialFunction<T>::operator+=(const BasicRadialFunction &o) {
  require_same_grid(*this, o);
  for (std::size_t i = 0; i < values_.size(); ++i)
    values_[i] += o.values_[i];
  return *this;
}

template <typename T>
BasicRadialFunction<T> &BasicRadialFunction<T>::operator-=(const BasicRadialFunction &o) {
  require_same_grid(*this, o);
  for (std::size_t i = 0; i < values_.size(); ++i)
    values_[i] -= o.values_[i];
  return *this;
}

// Sum over intervals of |f_{i+1} - f_i|^2 / (r_{i+1} - r_i) with f_0 = f_{n+1} = 0.
// This is the stencil of the discrete -d^2/dr^2 used by the Fock matrices.
template <typename T> double derivative_norm_squared(const BasicRadialFunction<T> &f) {
  const auto &grid = *f.grid();
  const auto dr = grid.spacings();
  const int n = grid.size();
  double s = abs2(f[0]) / dr[0];
  for (int i = 0; i + 1 < n; ++i)
    s += abs2(f[i + 1] - f[i]) / dr[i + 1];
  s += abs2(f[n - 1]) / dr[n];
  return s;
}

// Quadrature of |f|^2 / r^p.
template <typename T> double inverse_power_expectation(const BasicRadialFunction<T> &f, int p) {
  const auto &grid = *f.grid();
  double s = 0.0;
  for (int i = 0; i < grid.size(); ++i)
    s += grid.weight(i) * abs2(f[i]) / std::pow(grid.r(i), p);
  return s;
}

// ||f'||^2 + l(l+1) <f, r^-2 f>
template <typename T> double kinetic_quadratic_form(const BasicRadialFunction<T> &f, int l) {
  double s = derivative_norm_squared(f);
  if (l != 0)
    s += l * (l + 1.0) * inverse_power_expectation(f, 2);
  return s;
}

// <f, r^-1 f>
template <typename T> double coulomb_expectation(const BasicRadialFunction<T> &f) {
  return inverse_power_expectation(f, 1);
}

// Bilinear version of the kinetic form: sum conj(dg) df / dr + l(l+1) sum w conj(g) f / r^2.
template <typename T>
T kinetic_bilinear_form(const BasicRadialFunction<T> &g, const BasicRadialFunction<T> &f, int l) {
  require_same_grid(g, f);
  const auto &grid = *f.grid();
  const auto dr = grid.spacings();
  const int n = grid.size();
  T s = conj_value(g[0]) * f[0] / dr[0];
  for (int i = 0; i + 1 < n; ++i)
    s += conj_value(g[i + 1] - g[i]) * (f[i + 1] - f[i]) / dr[i + 1];
  s += conj_value(g[n - 1]) * f[n - 1] / dr[n];
  if (l != 0) {
    const double c = l * (l + 1.0);
    for (int i = 0; i < n; ++i)
      s += c * grid.weight(i) * conj_value(g[i]) * f[i] / (grid.r(i) * grid.r(i));
  }
  return s;
}

} // namespace radhf
