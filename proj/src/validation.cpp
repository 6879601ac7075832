#include "radhf/validation.hpp"

#include "radhf/energy.hpp"
#include "radhf/kernels.hpp"
#include "radhf/operators.hpp"
#include "radhf/scf.hpp"

#include <Eigen/Eigenvalues>

#include <chrono>
#include <cmath>
#include <random>

#include <fmt/format.h>

namespace radhf::validation {

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool passed;
  std::string detail;
};

class Suite {
public:
  explicit Suite(const SuiteOptions &options)
      : options_(options), coefficients_(options.coefficients
                                             ? *options.coefficients
                                             : angular::CoefficientTable::shared(8)) {}

  template <typename Fn> void check(const std::string &name, Fn &&fn) {
    const auto t0 = Clock::now();
    CheckResult r;
    r.name = name;
    try {
      const Outcome o = fn();
      r.passed = o.passed;
      r.detail = o.detail;
    } catch (const std::exception &e) {
      r.passed = false;
      r.detail = fmt::format("threw: {}", e.what());
    }
    r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    if (options_.on_result)
      options_.on_result(r);
    results_.push_back(std::move(r));
  }

  std::shared_ptr<const kernels::KernelTable> table(const GridPtr &grid, int max_l) const {
    kernels::TableOptions to;
    to.coefficients = &coefficients_;
    return std::make_shared<const kernels::KernelTable>(grid, max_l, to);
  }

  void run();

private:
  void coefficient_checks();
  void kernel_checks();
  void grid_checks();
  void operator_checks();
  void energy_checks();
  void scf_checks();

  const SuiteOptions &options_;
  const angular::CoefficientTable &coefficients_;
  std::vector<CheckResult> results_;

public:
  std::vector<CheckResult> take() { return std::move(results_); }
};

// 1/2 int P_a P_b P_c dt by Gauss-Legendre; exact for a + b + c < 128.
double triple_product(int a, int b, int c) {
  static const angular::GaussRule rule = angular::gauss_legendre(64);
  double s = 0.0;
  for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
    const double t = rule.nodes[q];
    s += rule.weights[q] * angular::legendre_p(a, t) * angular::legendre_p(b, t) *
         angular::legendre_p(c, t);
  }
  return 0.5 * s;
}

RadialFunction random_orbital(const GridPtr &grid, int l, std::mt19937_64 &rng,
                              double norm = 1.0) {
  std::uniform_real_distribution<double> coef(-1.0, 1.0), rate(0.6, 2.5);
  double c[3], a[3];
  for (int m = 0; m < 3; ++m) {
    c[m] = coef(rng);
    a[m] = rate(rng);
  }
  auto f = RadialFunction::sample(grid, [&](double r) {
    double s = 0.0;
    for (int m = 0; m < 3; ++m)
      s += c[m] * std::exp(-a[m] * r);
    return std::pow(r, l + 1) * s;
  });
  f *= norm / f.norm();
  return f;
}

Configuration random_configuration(std::mt19937_64 &rng, double Z) {
  std::uniform_int_distribution<int> count(1, 4), ang(0, 2);
  Configuration c;
  c.Z = Z;
  const int s = count(rng);
  for (int i = 0; i < s; ++i)
    c.shells.push_back({ang(rng), Spin::alpha});
  return c;
}

std::vector<RadialFunction> random_orbitals(const GridPtr &grid, const Configuration &config,
                                            std::mt19937_64 &rng) {
  std::uniform_real_distribution<double> nrm(0.3, 1.0);
  std::vector<RadialFunction> out;
  for (const auto &s : config.shells)
    out.push_back(random_orbital(grid, s.l, rng, nrm(rng)));
  return out;
}

void Suite::run() {
  coefficient_checks();
  kernel_checks();
  grid_checks();
  operator_checks();
  energy_checks();
  if (options_.level == Level::full)
    scf_checks();
}

//------------------------------------------------------------------------------
void Suite::coefficient_checks() {
  for (int l1 = 0; l1 <= 4; ++l1) {
    for (int l2 = l1; l2 <= 4; ++l2) {
      check(fmt::format("coefficients ({},{}) vs Legendre triple product", l1, l2), [&] {
        double sum = 0.0;
        for (int k = 0; k <= l1 + l2 + 1; ++k) {
          const double table = coefficients_(l1, l2, k);
          const double ref = triple_product(l1, l2, k);
          if (!(std::fabs(table - ref) <= 1e-12))
            return Outcome{false, fmt::format("(l,l',k) = ({},{},{}): table {:.15g}, quadrature "
                                              "{:.15g}",
                                              l1, l2, k, table, ref)};
          sum += (2 * k + 1) * table;
        }
        if (std::fabs(sum - 1.0) > 1e-12)
          return Outcome{false, fmt::format("sum (2k+1) coefficient = {:.15g}", sum)};
        return Outcome{true, ""};
      });
    }
  }
}

//------------------------------------------------------------------------------
void Suite::kernel_checks() {
  for (int l = 0; l <= 3; ++l) {
    for (int lp = l; lp <= 3; ++lp) {
      check(fmt::format("U_{}{} closed form vs angular quadrature on 10x10 (r,s)", l, lp), [&] {
        double worst = 0.0;
        for (int a = 0; a < 10; ++a) {
          for (int b = 0; b < 10; ++b) {
            const double r = 0.15 * std::pow(1.5, a), s = 0.2 * std::pow(1.45, b);
            const double closed = kernels::u_kernel(coefficients_, l, lp, r, s);
            const double oracle = kernels::oracle_u_kernel(l, lp, r, s, 48).value;
            worst = std::max(worst, std::fabs(closed - oracle));
          }
        }
        return Outcome{worst <= 1e-9, fmt::format("max deviation {:.3e}", worst)};
      });
    }
  }

  const GridPtr grid = make_grid(GridKind::uniform, 400, 20.0);
  const auto t = table(grid, 4);
  const int n = grid->size();
  check("U symmetry, upper bound and diagonal lower bound on a 400-point grid (l,l' <= 4)", [&] {
    for (int l = 0; l <= 4; ++l) {
      for (int lp = 0; lp <= 4; ++lp) {
        const auto &U = t->exchange(l, lp);
        const auto &Ut = t->exchange(lp, l);
        for (int i = 0; i < n; ++i) {
          for (int j = 0; j < n; ++j) {
            const double inv = 1.0 / std::max(grid->r(i), grid->r(j));
            const double u = U(i, j);
            if (u != U(j, i) || u != Ut(i, j))
              return Outcome{false, fmt::format("(l,l') = ({},{}): asymmetric at ({},{})", l,
                                                lp, i, j)};
            if (u < 0.0 || u > inv * (1.0 + 1e-14))
              return Outcome{false, fmt::format("(l,l') = ({},{}): U = {:.6g} outside "
                                                "[0, 1/r_>] at ({},{})",
                                                l, lp, u, i, j)};
            if (l == lp && u < inv / (2 * l + 1) * (1.0 - 1e-14))
              return Outcome{false, fmt::format("l = {}: U_ll = {:.6g} below 1/((2l+1) r_>) "
                                                "at ({},{})",
                                                l, u, i, j)};
          }
        }
      }
    }
    return Outcome{true, ""};
  });

  const GridPtr small = make_grid(GridKind::uniform, 200, 20.0);
  const auto ts = table(small, 2);
  for (const auto &[l, lp] : {std::pair{0, 0}, {1, 1}, {0, 2}, {2, 2}}) {
    check(fmt::format("U_{}{} weighted positivity on 20 random functions", l, lp), [&] {
      std::mt19937_64 rng(1000 + 10 * l + lp);
      std::normal_distribution<double> normal;
      const auto &U = ts->exchange(l, lp);
      const int m = small->size();
      Eigen::VectorXd sw(m);
      for (int i = 0; i < m; ++i)
        sw[i] = std::sqrt(small->weight(i));
      double worst = 1e300;
      for (int trial = 0; trial < 20; ++trial) {
        Eigen::VectorXd g(m);
        for (int i = 0; i < m; ++i)
          g[i] = normal(rng);
        // similar to diag(g) U diag(g) diag(w), but symmetric
        const Eigen::VectorXd d = g.cwiseProduct(sw);
        const Eigen::MatrixXd M = d.asDiagonal() * U * d.asDiagonal();
        const Eigen::VectorXd ev = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(
                                       M, Eigen::EigenvaluesOnly)
                                       .eigenvalues();
        const double floor = ev.minCoeff() / ev.cwiseAbs().maxCoeff();
        worst = std::min(worst, floor);
      }
      return Outcome{worst >= -1e-10, fmt::format("lowest eigenvalue / norm = {:.3e}", worst)};
    });
  }

  check("shell kernel P_l between (2l+1)/r_> and (4l+1)/r_>", [&] {
    for (int l = 0; l <= 3; ++l) {
      const Eigen::MatrixXd P = ts->p_matrix(std::min(l, 2));
      for (int i = 0; i < small->size(); i += 7) {
        for (int j = 0; j < small->size(); j += 5) {
          const int ll = std::min(l, 2);
          const double x = P(i, j) * std::max(small->r(i), small->r(j));
          if (x < (2 * ll + 1) * (1 - 1e-13) || x > (4 * ll + 1) * (1 + 1e-13))
            return Outcome{false, fmt::format("l = {}: P r_> = {:.6g} at ({},{})", ll, x, i, j)};
        }
      }
    }
    return Outcome{true, ""};
  });

  check("direct potential by prefix sums equals the dense kernel product", [&] {
    std::mt19937_64 rng(7);
    const auto f = random_orbital(small, 0, rng);
    Eigen::VectorXd rho(small->size()), wrho(small->size());
    for (int i = 0; i < small->size(); ++i) {
      rho[i] = f[i] * f[i];
      wrho[i] = small->weight(i) * rho[i];
    }
    const Eigen::VectorXd fast = kernels::direct_potential_from_density(*small, rho);
    const Eigen::VectorXd dense = ts->direct() * wrho;
    const double err = (fast - dense).cwiseAbs().maxCoeff();
    return Outcome{err <= 1e-13 * dense.cwiseAbs().maxCoeff(), fmt::format("max {:.3e}", err)};
  });
}

//------------------------------------------------------------------------------
void Suite::grid_checks() {
  check("trapezoidal norm of 2r exp(-r) converges quadratically", [&] {
    double err[2];
    for (int k = 0; k < 2; ++k) {
      const GridPtr g = make_grid(GridKind::uniform, k == 0 ? 199 : 399, 20.0);
      const auto f = RadialFunction::sample(g, [](double r) { return 2 * r * std::exp(-r); });
      err[k] = std::fabs(inner(f, f) - 1.0);
    }
    return Outcome{err[0] / err[1] >= 3.5,
                   fmt::format("errors {:.3e}, {:.3e}", err[0], err[1])};
  });

  check("discrete Hardy inequality on 200 random bumps", [&] {
    const GridPtr g = make_grid(GridKind::uniform, 1000, 20.0);
    const double h = g->spacings()[0];
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> lo(0.0, 5.0), width(0.5, 10.0), power(1.0, 3.0);
    for (int trial = 0; trial < 200; ++trial) {
      const double a = lo(rng), b = std::min(a + width(rng), 19.9), p = power(rng);
      const auto f = RadialFunction::sample(g, [&](double r) {
        return r <= a || r >= b ? 0.0 : std::pow((r - a) * (b - r), p);
      });
      const double lhs = inverse_power_expectation(f, 2);
      const double rhs = 4.0 * derivative_norm_squared(f) * (1.0 + 10.0 * h);
      if (lhs > rhs)
        return Outcome{false, fmt::format("bump [{:.3g},{:.3g}]^{:.3g}: {:.6g} > {:.6g}", a, b,
                                          p, lhs, rhs)};
    }
    return Outcome{true, ""};
  });
}

//------------------------------------------------------------------------------
void Suite::operator_checks() {
  const GridPtr grid = make_grid(GridKind::uniform, 2000, 40.0);
  check("hydrogenic l=0 Z=1 lowest eigenvalue -1/4", [&] {
    const auto p = lowest_eigenpairs(hydrogenic_matrix(grid, 0, 1.0), 2);
    const double e = p[0].value;
    return Outcome{std::fabs(e + 0.25) <= 5e-4, fmt::format("{:.10f}", e)};
  });
  check("hydrogenic l=1 Z=1 lowest eigenvalue -1/16", [&] {
    const auto p = lowest_eigenpairs(hydrogenic_matrix(grid, 1, 1.0), 1);
    const double e = p[0].value;
    return Outcome{std::fabs(e + 0.0625) <= 5e-4, fmt::format("{:.10f}", e)};
  });
  check("hydrogenic l=0 and l=1 levels with n=2 coincide (Z=2)", [&] {
    const auto s = lowest_eigenpairs(hydrogenic_matrix(grid, 0, 2.0), 2);
    const auto p = lowest_eigenpairs(hydrogenic_matrix(grid, 1, 2.0), 1);
    const bool ok = std::fabs(s[1].value + 0.25) <= 5e-4 && std::fabs(p[0].value + 0.25) <= 5e-4 &&
                    std::fabs(s[1].value - p[0].value) <= 1e-3;
    return Outcome{ok, fmt::format("2s {:.10f}, 2p {:.10f}", s[1].value, p[0].value)};
  });

  const GridPtr g = make_grid(GridKind::uniform, 300, 20.0);
  const auto t = table(g, 2);
  check("exchange below direct and direct below kinetic bound on 50 random inputs", [&] {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 50; ++trial) {
      const Configuration c = random_configuration(rng, 2.0);
      const auto orbitals = random_orbitals(g, c, rng);
      std::uniform_int_distribution<int> ang(0, 2);
      const int l = ang(rng);
      const auto f = random_orbital(g, l, rng);
      const Eigen::VectorXd x = to_scaled(f);
      const double k = x.dot(exchange_matrix(*t, c, orbitals, l) * x);
      std::vector<WeightedOrbital> list;
      double bound = 0.0;
      for (int j = 0; j < static_cast<int>(c.shells.size()); ++j) {
        list.push_back({&orbitals[j], static_cast<double>(c.degeneracy(j))});
        bound += c.degeneracy(j) *
                 (derivative_norm_squared(orbitals[j]) + std::pow(orbitals[j].norm(), 2));
      }
      const Eigen::VectorXd U = direct_potential(g, list);
      double u = 0.0;
      for (int i = 0; i < g->size(); ++i)
        u += g->weight(i) * U[i] * f[i] * f[i];
      if (!(k >= -1e-12 && k <= u + 1e-12 && u <= bound + 1e-8))
        return Outcome{false, fmt::format("trial {}: K {:.6g}, U {:.6g}, bound {:.6g}", trial, k,
                                          u, bound)};
    }
    return Outcome{true, ""};
  });
}

//------------------------------------------------------------------------------
void Suite::energy_checks() {
  const GridPtr grid = make_grid(GridKind::uniform, 2000, 40.0);
  check("helium exponential trial energy", [&] {
    const auto t = table(grid, 0);
    const double a = 27.0 / 32.0;
    Configuration c;
    c.Z = 2.0;
    c.shells = {{0, Spin::alpha}};
    const auto f = RadialFunction::sample(
        grid, [&](double r) { return 2 * std::pow(a, 1.5) * r * std::exp(-a * r); });
    const double e = rhf_energy(*t, c, std::vector<RadialFunction>{f}).total;
    const double exact = 2 * a * a - (2 * 2.0 - 5.0 / 8.0) * a;
    return Outcome{std::fabs(e - exact) <= 1e-3, fmt::format("{:.8f} vs {:.8f}", e, exact)};
  });

  const GridPtr g = make_grid(GridKind::uniform, 300, 20.0);
  const auto t = table(g, 2);
  check("shell decomposition identity on 100 random orbital sets", [&] {
    std::mt19937_64 rng(31);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
      const Configuration c = random_configuration(rng, 3.0);
      const auto orbitals = random_orbitals(g, c, rng);
      const double e = rhf_energy(*t, c, orbitals).total;
      for (int i = 0; i < static_cast<int>(c.shells.size()); ++i) {
        const double s = decompose_shell(*t, c, orbitals, i).sum();
        worst = std::max(worst, std::fabs(s - e) / std::max(1.0, std::fabs(e)));
      }
    }
    return Outcome{worst <= 1e-10, fmt::format("max relative deviation {:.3e}", worst)};
  });

  check("second-order coefficient matches the remainder under delta halving", [&] {
    std::mt19937_64 rng(41);
    double worst_ratio = 1e300;
    for (const double lambda : {0.0, 1.0}) {
      for (int trial = 0; trial < 5; ++trial) {
        const Configuration c = random_configuration(rng, 3.0);
        auto orbitals = random_orbitals(g, c, rng);
        const int i = trial % static_cast<int>(c.shells.size());
        const auto h = random_orbital(g, c.shells[i].l, rng);
        const double e0 = rhf_energy(*t, c, orbitals).total;
        const double c1 = first_order_coefficient(*t, c, orbitals, i, h);
        const double c2 = second_order_coefficient(*t, c, orbitals, i, h, lambda);
        double rem[3];
        const double deltas[3] = {1e-2, 5e-3, 2.5e-3};
        for (int k = 0; k < 3; ++k) {
          auto moved = orbitals;
          const double d = deltas[k];
          moved[i] = (1.0 / std::sqrt(1.0 + lambda * d * d)) * (orbitals[i] + d * h);
          rem[k] = std::fabs(rhf_energy(*t, c, moved).total - e0 - d * c1 - d * d * c2);
        }
        worst_ratio = std::min({worst_ratio, rem[0] / rem[1], rem[1] / rem[2]});
      }
    }
    return Outcome{worst_ratio >= 7.0, fmt::format("smallest remainder ratio {:.3f}", worst_ratio)};
  });

  check("energy lower bound on 50 random inputs", [&] {
    std::mt19937_64 rng(51);
    for (int trial = 0; trial < 50; ++trial) {
      const Configuration c = random_configuration(rng, 3.0);
      const auto orbitals = random_orbitals(g, c, rng);
      const double e = rhf_energy(*t, c, orbitals).total;
      for (const double eps : {0.05, 0.2, 1.0 / c.Z, 1.0}) {
        const double b = lower_bound(c, orbitals, eps);
        if (e < b)
          return Outcome{false, fmt::format("trial {}, eps {}: E {:.8g} < bound {:.8g}", trial,
                                            eps, e, b)};
      }
    }
    return Outcome{true, ""};
  });

  check("energy invariant under same-l orbital rotations (50 trials)", [&] {
    std::mt19937_64 rng(61);
    std::uniform_real_distribution<double> angle(0.0, 2 * M_PI);
    double worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
      Configuration c;
      c.Z = 4.0;
      const int l = trial % 3;
      c.shells = {{l, Spin::alpha}, {(l + 1) % 3, Spin::alpha}, {l, Spin::alpha}};
      const auto orbitals = random_orbitals(g, c, rng);
      const double th = angle(rng);
      auto rotated = orbitals;
      rotated[0] = std::cos(th) * orbitals[0] + std::sin(th) * orbitals[2];
      rotated[2] = -std::sin(th) * orbitals[0] + std::cos(th) * orbitals[2];
      const double a = rhf_energy(*t, c, orbitals).total;
      const double b = rhf_energy(*t, c, rotated).total;
      worst = std::max(worst, std::fabs(a - b) / std::max(1.0, std::fabs(a)));
    }
    return Outcome{worst <= 1e-10, fmt::format("max relative change {:.3e}", worst)};
  });

  check("paired UHF configuration reproduces the RHF energy", [&] {
    std::mt19937_64 rng(71);
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
      const Configuration c = random_configuration(rng, 3.0);
      const auto orbitals = random_orbitals(g, c, rng);
      Configuration u = c;
      u.model = Model::uhf;
      std::vector<RadialFunction> both = orbitals;
      for (const auto &s : c.shells)
        u.shells.push_back({s.l, Spin::beta});
      for (const auto &f : orbitals)
        both.push_back(f);
      const double a = rhf_energy(*t, c, orbitals).total;
      const double b = uhf_energy(*t, u, both).total;
      worst = std::max(worst, std::fabs(a - b) / std::max(1.0, std::fabs(a)));
    }
    return Outcome{worst <= 1e-12, fmt::format("max relative deviation {:.3e}", worst)};
  });

  check("exchange part between 0 and the direct part", [&] {
    std::mt19937_64 rng(81);
    for (int trial = 0; trial < 30; ++trial) {
      const Configuration c = random_configuration(rng, 2.0);
      const auto e = rhf_energy(*t, c, random_orbitals(g, c, rng));
      if (e.exchange < 0.0 || e.exchange > e.direct * (1 + 1e-12))
        return Outcome{false, fmt::format("exchange {:.8g}, direct {:.8g}", e.exchange,
                                          e.direct)};
    }
    return Outcome{true, ""};
  });
}

//------------------------------------------------------------------------------
Configuration closed_shell(double Z, std::initializer_list<int> ls) {
  Configuration c;
  c.Z = Z;
  for (const int l : ls)
    c.shells.push_back({l, Spin::alpha});
  return c;
}

void Suite::scf_checks() {
  const auto solve_with = [&](const Configuration &c) {
    const GridPtr grid = make_grid_for(c, GridOptions{});
    return solve(c, table(grid, c.max_l()), ScfOptions{});
  };
  const auto clean = [](const ScfState &s) {
    const auto report = theorem_report(s);
    return report.evaluated && report.violations == 0;
  };
  const auto norms_one = [](const ScfState &s) {
    for (const auto &sh : s.shells)
      if (std::fabs(sh.norm - 1.0) > 1e-6)
        return false;
    return true;
  };

  check("helium RHF energy", [&] {
    const auto s = solve_with(closed_shell(2.0, {0}));
    const bool ok = s.converged && std::fabs(s.energy.total + 1.43087) <= 2e-3 &&
                    s.energy.total <= -1.423828 && s.iterations < 100 && clean(s);
    return Outcome{ok, fmt::format("E = {:.8f} after {} iterations", s.energy.total,
                                   s.iterations)};
  });
  check("H- closed shell (Z = N-1) keeps unit norm", [&] {
    const auto s = solve_with(closed_shell(1.0, {0}));
    return Outcome{s.converged && norms_one(s) && clean(s),
                   fmt::format("norm {:.10f}, eps {:.6g}", s.shells[0].norm, s.shells[0].epsilon)};
  });
  ScfState neon;
  check("neon: negative eigenvalues, unit norms, clean report", [&] {
    neon = solve_with(closed_shell(10.0, {0, 0, 1}));
    bool ok = neon.converged && norms_one(neon) && clean(neon);
    for (const auto &sh : neon.shells)
      ok = ok && sh.epsilon < 0.0;
    return Outcome{ok, fmt::format("E = {:.8f}", neon.energy.total)};
  });
  check("neon probe coefficients non-negative", [&] {
    if (!neon.converged)
      return Outcome{false, "neon did not converge"};
    double worst = 1e300;
    for (int i = 0; i < 3; ++i)
      for (const auto &p : probe_shell(neon, i, {2.0, 5.0, 10.0, 20.0}, 1.0))
        worst = std::min(worst, p.coefficient);
    return Outcome{worst >= -1e-6, fmt::format("smallest coefficient {:.6g}", worst)};
  });
  check("F- analog (Z = N-1) keeps unit norms", [&] {
    const auto s = solve_with(closed_shell(9.0, {0, 0, 1}));
    return Outcome{s.converged && norms_one(s) && clean(s),
                   fmt::format("eps = {:.6g}, {:.6g}, {:.6g}", s.shells[0].epsilon,
                               s.shells[1].epsilon, s.shells[2].epsilon)};
  });
  check("spinless UHF Z=3 (s, p) energy inequalities", [&] {
    Configuration c = closed_shell(3.0, {0, 1});
    c.model = Model::uhf;
    const auto s = solve_with(c);
    const auto cor = corollary_inequalities(s);
    const bool ok = s.converged && norms_one(s) && clean(s) && cor.holds() &&
                    cor.shell_condition && cor.charge_condition;
    return Outcome{ok, fmt::format("E = {:.8f}, E without s = {:.8f}", cor.E_full,
                                   cor.E_without_s_shell)};
  });
  check("depleted helium shell yields a negative probe coefficient", [&] {
    const Configuration c = closed_shell(2.0, {0});
    GridOptions go;
    go.r_max = 100.0;
    go.n = 2500;
    const GridPtr grid = make_grid_for(c, go);
    ScfState s = solve(c, table(grid, 0), ScfOptions{});
    s.shells[0].orbital *= 1.0 / std::sqrt(2.0);
    refresh(s);
    double best = 1e300;
    for (const auto &p : probe_shell(s, 0, {5.0, 10.0, 20.0, 40.0}, 0.0))
      best = std::min(best, p.coefficient);
    return Outcome{best < 0.0, fmt::format("smallest coefficient {:.6g}", best)};
  });
}

} // namespace

std::vector<CheckResult> run_suite(const SuiteOptions &options) {
  Suite suite(options);
  suite.run();
  return suite.take();
}

} // namespace radhf::validation
