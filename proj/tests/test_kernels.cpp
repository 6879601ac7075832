#include "radhf/kernels.hpp"

#include "oracles.hpp"

#include <Eigen/Eigenvalues>
#include <catch_amalgamated.hpp>

#include <filesystem>
#include <random>

using namespace radhf;
using namespace radhf::kernels;
using Catch::Approx;

TEST_CASE("exchange kernel at documented points") {
  CHECK(u_kernel(0, 0, 2.0, 3.0) == Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(u_kernel(0, 1, 1.0, 2.0) == Approx(1.0 / 12.0).epsilon(1e-15));
  CHECK(u_kernel(1, 1, 1.0, 1.0) == Approx(7.0 / 15.0).epsilon(1e-15));
}

TEST_CASE("closed form agrees with two independent angular quadratures") {
  double worst_library = 0.0, worst_test = 0.0;
  for (int l = 0; l <= 3; ++l)
    for (int lp = 0; lp <= 3; ++lp)
      for (int a = 0; a < 10; ++a)
        for (int b = 0; b < 10; ++b) {
          const double r = 0.1 * std::pow(1.6, a), s = 0.1 * std::pow(1.6, b);
          const double u = u_kernel(l, lp, r, s);
          worst_library =
              std::max(worst_library, std::fabs(u - oracle_u_kernel(l, lp, r, s, 40).value));
          worst_test = std::max(worst_test, std::fabs(u - oracle::u_by_angle(l, lp, r, s)));
          CHECK(std::fabs(u - oracle::u_series(l, lp, r, s)) <= 1e-14 / std::max(r, s));
        }
  CHECK(worst_library <= 1e-9);
  CHECK(worst_test <= 1e-9);
}

TEST_CASE("angular quadrature examples") {
  CHECK(std::fabs(oracle_u_kernel(0, 0, 1.0, 2.0, 16).value - 0.5) <= 1e-10);
  CHECK(std::fabs(oracle_u_kernel(1, 1, 1.0, 2.0, 16).value - u_kernel(1, 1, 1.0, 2.0)) <= 1e-10);
  CHECK(std::fabs(oracle_u_kernel(2, 4, 0.5, 3.0, 16).value - u_kernel(2, 4, 0.5, 3.0)) <= 1e-10);
  CHECK(std::fabs(oracle_u_kernel(2, 2, 1.5, 1.5, 16).value - u_kernel(2, 2, 1.5, 1.5)) <= 1e-10);
  CHECK(std::fabs(oracle::u_by_angle(2, 2, 1.5, 1.5) - u_kernel(2, 2, 1.5, 1.5)) <= 1e-10);
}

TEST_CASE("angular quadrature reports insufficient order") {
  CHECK_THROWS_AS(oracle_u_kernel(4, 4, 1.0, 2.0, 2, 1e-14), Error);
  CHECK(oracle_u_kernel(4, 4, 1.0, 2.0, 2, 1e3).error_estimate > 0.0);
  CHECK_THROWS_AS(oracle_u_kernel(0, 0, 0.0, 2.0, 8), Error);
}

TEST_CASE("shell kernel examples and bounds") {
  CHECK(p_kernel(0, 1.0, 2.0) == Approx(0.5).epsilon(1e-15));
  CHECK(p_kernel(1, 1.0, 1.0) == Approx(23.0 / 5.0).epsilon(1e-14));
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> rad(0.01, 50.0);
  for (int trial = 0; trial < 500; ++trial) {
    const int l = trial % 6;
    const double r = rad(rng), s = rad(rng);
    const double x = p_kernel(l, r, s) * std::max(r, s);
    CHECK(x >= (2 * l + 1) * (1 - 1e-14));
    CHECK(x <= (4 * l + 1) * (1 + 1e-14));
    CHECK(p_kernel(l, r, s) == p_kernel(l, s, r));
  }
}

TEST_CASE("kernel table with max_l = 0 has one exchange matrix equal to the direct one") {
  const auto g = make_grid(GridKind::uniform, 50, 5.0);
  const KernelTable t(g, 0);
  CHECK((t.exchange(0, 0) - t.direct()).cwiseAbs().maxCoeff() == 0.0);
  CHECK_THROWS(t.exchange(0, 1));
}

TEST_CASE("kernel table bounds on a 400-point grid for l, l' <= 4") {
  const auto g = make_grid(GridKind::uniform, 400, 20.0);
  const KernelTable t(g, 4);
  const int n = g->size();
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<int> idx(0, n - 1);
  for (int l = 0; l <= 4; ++l)
    for (int lp = 0; lp <= 4; ++lp) {
      const auto &U = t.exchange(l, lp);
      bool symmetric = true, bounded = true, lower = true;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          const double inv = 1.0 / std::max(g->r(i), g->r(j));
          symmetric &= U(i, j) == U(j, i) && U(i, j) == t.exchange(lp, l)(i, j);
          bounded &= U(i, j) >= 0.0 && U(i, j) <= inv * (1 + 1e-15);
          if (l == lp)
            lower &= U(i, j) >= inv / (2 * l + 1) * (1 - 1e-15);
        }
      CHECK(symmetric);
      CHECK(bounded);
      CHECK(lower);
      for (int trial = 0; trial < 20; ++trial) {
        const int i = idx(rng), j = idx(rng);
        CHECK(U(i, j) == Approx(u_kernel(l, lp, g->r(i), g->r(j))).epsilon(1e-15));
      }
    }
  for (int i = 0; i < n; i += 37)
    for (int j = 0; j < n; j += 41)
      CHECK(t.direct()(i, j) == 1.0 / std::max(g->r(i), g->r(j)));
}

TEST_CASE("weighted exchange kernels are positive semidefinite") {
  const auto g = make_grid(GridKind::uniform, 200, 20.0);
  const KernelTable t(g, 2);
  std::mt19937_64 rng(6);
  std::normal_distribution<double> normal;
  const int n = g->size();
  for (const auto &[l, lp] : {std::pair{0, 0}, {1, 1}, {0, 2}, {2, 2}}) {
    for (int trial = 0; trial < 20; ++trial) {
      Eigen::VectorXd d(n);
      for (int i = 0; i < n; ++i)
        d[i] = normal(rng) * std::sqrt(g->weight(i));
      // g U g w is similar to this symmetric matrix
      const Eigen::MatrixXd M = d.asDiagonal() * t.exchange(l, lp) * d.asDiagonal();
      const auto ev =
          Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(M, Eigen::EigenvaluesOnly).eigenvalues();
      CHECK(ev.minCoeff() >= -1e-10 * ev.cwiseAbs().maxCoeff());
    }
  }
}

TEST_CASE("memory budget is enforced with the required size") {
  const auto g = make_grid(GridKind::uniform, 2000, 40.0);
  TableOptions o;
  o.memory_budget_bytes = 1 << 20;
  try {
    KernelTable t(g, 3, o);
    FAIL("expected MemoryBudgetError");
  } catch (const MemoryBudgetError &e) {
    CHECK(e.required_bytes == KernelTable::required_bytes(2000, 3));
    CHECK(e.required_bytes == 11u * 2000u * 2000u * 8u);
    CHECK(e.budget_bytes == (1u << 20));
  }
}

TEST_CASE("kernel cache round trip") {
  const auto dir = std::filesystem::temp_directory_path() / "radhf_kernel_cache_test";
  std::filesystem::remove_all(dir);
  const auto g = make_grid(GridKind::exponential, 120, 15.0);
  const KernelTable built = KernelTable::cached(dir, g, 2);
  REQUIRE(std::filesystem::exists(dir));
  const KernelTable loaded = KernelTable::cached(dir, g, 2);
  CHECK((built.direct() - loaded.direct()).cwiseAbs().maxCoeff() == 0.0);
  for (int l = 0; l <= 2; ++l)
    for (int lp = l; lp <= 2; ++lp)
      CHECK((built.exchange(l, lp) - loaded.exchange(l, lp)).cwiseAbs().maxCoeff() == 0.0);
  const auto file = dir / "table.bin";
  built.save(file);
  const auto other = make_grid(GridKind::exponential, 120, 16.0);
  CHECK_THROWS_AS(KernelTable::load(file, other, 2), Error);
  CHECK_THROWS_AS(KernelTable::load(file, g, 1), Error);
  CHECK_THROWS_AS(KernelTable::load(dir / "missing.bin", g, 2), Error);
  std::filesystem::remove_all(dir);
}

TEST_CASE("prefix-sum direct potential equals the dense product") {
  std::mt19937_64 rng(9);
  for (auto kind : {GridKind::uniform, GridKind::exponential}) {
    const auto g = make_grid(kind, 300, 25.0);
    const KernelTable t(g, 0);
    const auto f = oracle::random_orbital(g, 0, rng);
    Eigen::VectorXd rho(g->size()), wrho(g->size());
    for (int i = 0; i < g->size(); ++i) {
      rho[i] = f[i] * f[i];
      wrho[i] = g->weight(i) * rho[i];
    }
    const Eigen::VectorXd a = direct_potential_from_density(*g, rho);
    const Eigen::VectorXd b = t.direct() * wrho;
    CHECK((a - b).cwiseAbs().maxCoeff() <= 1e-14 * b.cwiseAbs().maxCoeff());
  }
}

TEST_CASE("kernel table built from an altered coefficient table differs") {
  const auto g = make_grid(GridKind::uniform, 40, 5.0);
  const auto bad = angular::CoefficientTable::shared(4).with_override(1, 1, 2, 0.0);
  TableOptions o;
  o.coefficients = &bad;
  const KernelTable t(g, 1, o);
  CHECK(t.exchange(1, 1)(3, 5) == Approx(1.0 / 3.0 / std::max(g->r(3), g->r(5))));
}
