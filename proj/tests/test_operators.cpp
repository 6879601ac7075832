#include "radhf/operators.hpp"

#include "oracles.hpp"

#include <catch_amalgamated.hpp>

#include <random>

using namespace radhf;

namespace {

std::vector<RadialFunction> orthonormal_channel(const GridPtr &g, int l, int count,
                                                std::mt19937_64 &rng) {
  std::vector<RadialFunction> out;
  while (static_cast<int>(out.size()) < count) {
    auto f = oracle::random_orbital(g, l, rng);
    for (const auto &e : out)
      f -= inner(e, f) * e;
    if (f.norm() < 1e-3)
      continue;
    f *= 1.0 / f.norm();
    out.push_back(f);
  }
  return out;
}

Configuration rhf(double Z, std::vector<int> ls) {
  Configuration c;
  c.Z = Z;
  for (int l : ls)
    c.shells.push_back({l, Spin::alpha});
  return c;
}

} // namespace

TEST_CASE("hydrogenic levels of the discrete operator") {
  const auto g = make_grid(GridKind::exponential, 3000, 60.0, 7.0);
  const auto s = lowest_eigenpairs(hydrogenic_matrix(g, 0, 1.0), 2);
  CHECK(std::fabs(s[0].value + 0.25) < 1e-4);
  CHECK(std::fabs(s[1].value + 1.0 / 16) < 1e-4);
  CHECK(std::fabs(s[0].value - oracle::hydrogen_by_shooting(0, 1.0, 0, 60.0)) < 1e-4);
  CHECK(std::fabs(s[1].value - oracle::hydrogen_by_shooting(0, 1.0, 1, 60.0)) < 1e-4);

  const auto p = lowest_eigenpairs(hydrogenic_matrix(g, 1, 1.0), 1);
  CHECK(std::fabs(p[0].value - s[1].value) < 1e-4); // 2s and 2p coincide
  CHECK(std::fabs(p[0].value - oracle::hydrogen_by_shooting(1, 1.0, 0, 60.0)) < 1e-4);

  const auto he = lowest_eigenpairs(hydrogenic_matrix(g, 0, 2.0), 2);
  CHECK(std::fabs(he[0].value + 1.0) < 1e-3);
  CHECK(std::fabs(he[1].value + 0.25) < 1e-4);
}

TEST_CASE("hydrogenic spectrum bounds, orthogonality and symmetry") {
  std::mt19937_64 rng(13);
  for (auto kind : {GridKind::uniform, GridKind::exponential})
    for (double Z : {1.0, 3.0, 10.0})
      for (int l = 0; l <= 3; ++l) {
        const auto g = make_grid(kind, 400, 30.0);
        const auto F = hydrogenic_matrix(g, l, Z);
        const auto M = F.dense();
        CHECK((M - M.transpose()).cwiseAbs().maxCoeff() == 0.0);
        const auto pairs = lowest_eigenpairs(F, 4);
        for (std::size_t a = 0; a < pairs.size(); ++a) {
          CHECK(pairs[a].value > -Z * Z);
          CHECK(std::fabs(pairs[a].function.norm() - 1.0) < 1e-12);
          for (std::size_t b = 0; b < a; ++b)
            CHECK(std::fabs(inner(pairs[a].function, pairs[b].function)) < 1e-10);
        }
      }
}

TEST_CASE("Fock matrix of zero orbitals is the hydrogenic matrix") {
  const auto g = make_grid(GridKind::uniform, 200, 20.0);
  const kernels::KernelTable t(g, 1);
  const auto c = rhf(3.0, {0, 1});
  const std::vector<RadialFunction> zero(2, RadialFunction(g));
  for (int l = 0; l <= 1; ++l) {
    const auto F = assemble_fock(t, c, zero, l);
    const auto H = hydrogenic_matrix(g, l, 3.0);
    CHECK((F.dense() - H.dense()).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("RHF direct term is twice the UHF one for one closed shell") {
  std::mt19937_64 rng(21);
  const auto g = make_grid(GridKind::uniform, 300, 20.0);
  const kernels::KernelTable t(g, 1);
  const auto f = orthonormal_channel(g, 0, 1, rng);
  Configuration r = rhf(2.0, {0});
  Configuration u;
  u.Z = 2.0;
  u.model = Model::uhf;
  u.shells = {{0, Spin::alpha}, {0, Spin::beta}};
  const auto Fr = assemble_fock(t, r, f, 1);
  const auto Fu = assemble_fock(t, u, {f[0], f[0]}, 1, Spin::alpha);
  const auto H = hydrogenic_matrix(g, 1, 2.0);
  const Eigen::VectorXd dr = Fr.diagonal - H.diagonal, du = Fu.diagonal - H.diagonal;
  CHECK((dr - du).cwiseAbs().maxCoeff() <= 1e-13 * du.cwiseAbs().maxCoeff());
  const std::vector<RadialFunction> alpha_only = {f[0], RadialFunction(g)};
  const auto Fa = assemble_fock(t, u, alpha_only, 1, Spin::beta);
  const Eigen::VectorXd da = Fa.diagonal - H.diagonal;
  CHECK((2.0 * da - dr).cwiseAbs().maxCoeff() <= 1e-13 * dr.cwiseAbs().maxCoeff());
}

TEST_CASE("dropping a shell equals assembling without it") {
  std::mt19937_64 rng(5);
  const auto g = make_grid(GridKind::exponential, 250, 25.0);
  const kernels::KernelTable t(g, 2);
  const auto c = rhf(8.0, {0, 0, 1, 2});
  auto s = orthonormal_channel(g, 0, 2, rng);
  const auto p = orthonormal_channel(g, 1, 1, rng);
  const auto d = orthonormal_channel(g, 2, 1, rng);
  const std::vector<RadialFunction> orbitals = {s[0], s[1], p[0], d[0]};
  for (int drop = 0; drop < 4; ++drop) {
    std::vector<RadialFunction> rest;
    for (int i = 0; i < 4; ++i)
      if (i != drop)
        rest.push_back(orbitals[i]);
    for (int l = 0; l <= 2; ++l) {
      const auto A = assemble_fock(t, c, orbitals, l, Spin::alpha, drop).dense();
      const auto B = assemble_fock(t, c.without_shell(drop), rest, l).dense();
      CHECK((A - B).cwiseAbs().maxCoeff() <= 1e-12 * B.cwiseAbs().maxCoeff());
    }
  }
}

TEST_CASE("exchange is bounded by the direct interaction") {
  std::mt19937_64 rng(8);
  const auto g = make_grid(GridKind::uniform, 200, 20.0);
  const kernels::KernelTable t(g, 3);
  for (int trial = 0; trial < 30; ++trial) {
    const int lj = trial % 4, l = (trial / 4) % 4;
    const auto c = rhf(5.0, {lj});
    const auto fj = orthonormal_channel(g, lj, 1, rng);
    const auto h = oracle::random_orbital(g, l, rng);
    const Eigen::VectorXd gh = to_scaled(h);
    const double k = gh.dot(exchange_matrix(t, c, fj, l) * gh);
    const Eigen::VectorXd U = direct_potential(g, {{&fj[0], 2.0 * lj + 1.0}});
    double u = 0.0;
    for (int i = 0; i < g->size(); ++i)
      u += g->weight(i) * U[i] * h[i] * h[i];
    CHECK(k >= -1e-14);
    CHECK(k <= u * (1 + 1e-12));
  }
}

TEST_CASE("direct potential examples") {
  const auto g = make_grid(GridKind::uniform, 4000, 40.0);
  const auto f = RadialFunction::sample(g, [](double r) { return r * std::exp(-r) * 2.0; });
  const Eigen::VectorXd U = direct_potential(g, {{&f, 1.0}});
  const double nf = f.norm() * f.norm();
  for (int i = 0; i < g->size(); i += 97) {
    const double r = g->r(i);
    const double exact = (1.0 - (1.0 + r) * std::exp(-2 * r)) / r;
    CHECK(std::fabs(U[i] - exact) < 1e-4);
  }
  // outside a compactly supported density the potential is 1/r
  const auto b = RadialFunction::sample(g, [](double r) { return r < 5.0 ? std::sin(r) : 0.0; });
  const Eigen::VectorXd V = direct_potential(g, {{&b, 3.0}});
  const double q = 3.0 * b.norm() * b.norm();
  for (int i = 0; i < g->size(); ++i)
    if (g->r(i) > 5.0)
      CHECK(V[i] == Catch::Approx(q / g->r(i)).epsilon(1e-12));
  CHECK(nf == Catch::Approx(1.0).margin(1e-5));
}

TEST_CASE("iterative and dense eigensolvers agree beyond the dense threshold") {
  std::mt19937_64 rng(3);
  const auto g = make_grid(GridKind::uniform, 900, 30.0);
  const kernels::KernelTable t(g, 1);
  const auto c = rhf(10.0, {0, 0, 1});
  const auto s = orthonormal_channel(g, 0, 2, rng);
  const auto p = orthonormal_channel(g, 1, 1, rng);
  const std::vector<RadialFunction> orbitals = {s[0], s[1], p[0]};
  for (int l = 0; l <= 1; ++l) {
    const auto F = assemble_fock(t, c, orbitals, l);
    REQUIRE(F.exchange.has_value());
    EigenOptions dense;
    dense.dense_max_n = 1000;
    const auto a = lowest_eigenpairs(F, 3);
    const auto b = lowest_eigenpairs(F, 3, dense);
    REQUIRE(a.size() == 3);
    for (int k = 0; k < 3; ++k) {
      CHECK(std::fabs(a[k].value - b[k].value) < 1e-8);
      CHECK(std::fabs(std::fabs(inner(a[k].function, b[k].function)) - 1.0) < 1e-8);
    }
  }
}

TEST_CASE("Fock residual vanishes on eigenfunctions and scales out") {
  std::mt19937_64 rng(17);
  const auto g = make_grid(GridKind::uniform, 300, 20.0);
  const kernels::KernelTable t(g, 0);
  const auto c = rhf(2.0, {0});
  const auto f = orthonormal_channel(g, 0, 1, rng);
  const auto F = assemble_fock(t, c, f, 0);
  const auto e = lowest_eigenpairs(F, 1);
  CHECK(F.residual(e[0].function) < 1e-9);
  CHECK(F.residual(RadialFunction(g)) == 0.0);
  CHECK(F.quadratic_form(e[0].function) == Catch::Approx(e[0].value).epsilon(1e-12));
  auto h = 3.0 * f[0];
  CHECK(F.residual(h) == Catch::Approx(F.residual(f[0])).epsilon(1e-12));
  CHECK(F.bilinear_form(f[0], e[0].function) ==
        Catch::Approx(F.bilinear_form(e[0].function, f[0])).epsilon(1e-12));
}
