#include "radhf/energy.hpp"

#include "fixtures.hpp"

#include <catch_amalgamated.hpp>

#include <random>

using namespace radhf;
using Catch::Approx;
using cd = std::complex<double>;

namespace {

using fixture::random_set;
using fixture::rhf;

std::vector<int> ls_of(const Configuration &c) {
  std::vector<int> ls;
  for (const auto &s : c.shells)
    ls.push_back(s.l);
  return ls;
}

const std::vector<Configuration> &sample_configs() {
  static const std::vector<Configuration> v = {rhf(2, {0}), rhf(4, {0, 0}), rhf(3, {1}),
                                               rhf(10, {0, 0, 1}), rhf(9, {0, 2, 1})};
  return v;
}

} // namespace

TEST_CASE("RHF and UHF functionals agree with brute-force evaluation") {
  std::mt19937_64 rng(31);
  const auto g = make_grid(GridKind::exponential, 120, 20.0);
  const kernels::KernelTable t(g, 2);
  for (const auto &c : sample_configs()) {
    for (int trial = 0; trial < 3; ++trial) {
      const auto f = random_set(g, c, rng, true);
      const double e = rhf_energy(t, c, f).total;
      CHECK(e == Approx(oracle::rhf_functional(ls_of(c), f, c.Z)).epsilon(1e-11));
    }
  }
  Configuration u;
  u.Z = 5;
  u.model = Model::uhf;
  u.shells = {{0, Spin::alpha}, {0, Spin::alpha}, {1, Spin::alpha}, {0, Spin::beta},
              {2, Spin::beta}};
  std::vector<std::pair<int, int>> tags;
  for (const auto &s : u.shells)
    tags.emplace_back(s.l, s.spin == Spin::alpha ? 0 : 1);
  for (int trial = 0; trial < 5; ++trial) {
    const auto f = random_set(g, u, rng, true);
    const auto e = uhf_energy(t, u, f);
    CHECK(e.total == Approx(oracle::uhf_functional(tags, f, u.Z)).epsilon(1e-11));
    CHECK(e.total == Approx(e.kinetic + e.nuclear + e.direct - e.exchange).epsilon(1e-13));
    CHECK(total_energy(t, u, f).total == e.total);
  }
}

TEST_CASE("complex orbitals agree with brute-force evaluation") {
  std::mt19937_64 rng(32);
  std::uniform_real_distribution<double> phase(0.0, 6.283185307179586);
  const auto g = make_grid(GridKind::uniform, 100, 15.0);
  const kernels::KernelTable t(g, 1);
  const auto c = rhf(6, {0, 0, 1});
  const auto f = random_set(g, c, rng, true);
  OrbitalSet<cd> z;
  for (const auto &x : f) {
    auto y = x.cast<cd>();
    for (int i = 0; i < y.size(); ++i)
      y[i] *= std::polar(1.0, phase(rng) * g->r(i) / 15.0);
    z.push_back(y);
  }
  CHECK(rhf_energy(t, c, z).total == Approx(oracle::rhf_functional(ls_of(c), z, c.Z)).epsilon(1e-11));
}

TEST_CASE("helium exponential trial value") {
  const double a = 27.0 / 32.0;
  const auto g = make_grid(GridKind::exponential, 4000, 40.0, 7.0);
  const kernels::KernelTable t(g, 0);
  auto f = RadialFunction::sample(g, [&](double r) { return r * std::exp(-a * r); });
  f *= 1.0 / f.norm();
  const auto e = rhf_energy(t, rhf(2, {0}), OrbitalSet<double>{f});
  CHECK(std::fabs(e.total - (2 * a * a - 4 * a + 5 * a / 8)) < 1e-5);
  CHECK(std::fabs(e.total + 1.423828) < 1e-5);
}

TEST_CASE("shell decomposition identity on random sets") {
  std::mt19937_64 rng(33);
  const auto g = make_grid(GridKind::exponential, 150, 20.0);
  const kernels::KernelTable t(g, 2);
  int count = 0;
  for (int trial = 0; trial < 20; ++trial)
    for (const auto &c : sample_configs()) {
      const auto f = random_set(g, c, rng, true);
      const int i = trial % static_cast<int>(c.shells.size());
      const auto d = decompose_shell(t, c, f, i);
      const double e = rhf_energy(t, c, f).total;
      CHECK(d.sum() == Approx(e).epsilon(1e-12).margin(1e-12));
      std::vector<RadialFunction> rest;
      for (std::size_t j = 0; j < f.size(); ++j)
        if (static_cast<int>(j) != i)
          rest.push_back(f[j]);
      CHECK(d.without_shell == Approx(rhf_energy(t, c.without_shell(i), rest).total).epsilon(1e-12));
      ++count;
    }
  CHECK(count == 100);
}

TEST_CASE("pair term bounds and an empty shell") {
  std::mt19937_64 rng(34);
  const auto g = make_grid(GridKind::uniform, 200, 20.0);
  const kernels::KernelTable t(g, 2);
  for (int l = 0; l <= 2; ++l) {
    const auto c = rhf(4, {l});
    const auto f = random_set(g, c, rng, true);
    const auto d = decompose_shell(t, c, f, 0);
    double D = 0.0;
    for (int a = 0; a < g->size(); ++a)
      for (int b = 0; b < g->size(); ++b)
        D += g->weight(a) * g->weight(b) * f[0][a] * f[0][a] * f[0][b] * f[0][b] /
             std::max(g->r(a), g->r(b));
    const double k = 2 * l + 1.0;
    CHECK(d.pair >= k * k * D * (1 - 1e-12));
    CHECK(d.pair <= k * (4 * l + 1) * D * (1 + 1e-12));
  }
  const auto c = rhf(6, {0, 1, 0});
  auto f = random_set(g, c, rng, true);
  f[1] = RadialFunction(g);
  const auto d = decompose_shell(t, c, f, 1);
  CHECK(d.single_shell == 0.0);
  CHECK(d.pair == 0.0);
  CHECK(d.without_shell == Approx(rhf_energy(t, c, f).total).epsilon(1e-13));
}

TEST_CASE("second-order coefficient matches the Taylor expansion") {
  std::mt19937_64 rng(35);
  const auto g = make_grid(GridKind::exponential, 150, 20.0);
  const kernels::KernelTable t(g, 2);
  for (const auto &c : sample_configs())
    for (double lambda : {0.0, 1.0}) {
      const auto f = random_set(g, c, rng, true);
      const int i = static_cast<int>(c.shells.size()) - 1;
      const auto h = oracle::random_orbital(g, c.shells[i].l, rng, 0.7);
      const double E0 = rhf_energy(t, c, f).total;
      const double c1 = first_order_coefficient(t, c, f, i, h);
      const double c2 = second_order_coefficient(t, c, f, i, h, lambda);
      auto remainder = [&](double delta) {
        auto g2 = f;
        g2[i] = (1.0 / std::sqrt(1.0 + lambda * delta * delta)) * (f[i] + delta * h);
        return rhf_energy(t, c, g2).total - E0 - c1 * delta - c2 * delta * delta;
      };
      const double r1 = remainder(0.004), r2 = remainder(0.002);
      INFO("Z " << c.Z << " lambda " << lambda << " remainders " << r1 << " " << r2);
      CHECK(std::fabs(r1 / r2) >= 7.0);
      CHECK(std::fabs(r1 / r2) <= 9.0);
    }
}

TEST_CASE("second-order coefficient of the zero direction vanishes") {
  std::mt19937_64 rng(36);
  const auto g = make_grid(GridKind::uniform, 150, 20.0);
  const kernels::KernelTable t(g, 1);
  const auto c = rhf(4, {0, 1});
  const auto f = random_set(g, c, rng);
  const RadialFunction zero(g);
  CHECK(second_order_coefficient(t, c, f, 0, zero, 0.0) == 0.0);
  CHECK(first_order_coefficient(t, c, f, 1, zero) == 0.0);
  // normalization term alone: E(f / sqrt(1 + delta^2)) expanded in delta
  const double c2 = second_order_coefficient(t, c, f, 1, zero, 1.0);
  auto g2 = f;
  const double delta = 1e-3;
  g2[1] *= 1.0 / std::sqrt(1.0 + delta * delta);
  const double e0 = rhf_energy(t, c, f).total;
  CHECK((rhf_energy(t, c, g2).total - e0) / (delta * delta) == Approx(c2).epsilon(1e-5));
}

TEST_CASE("lower bound holds and matches its closed form at eps = 1/Z") {
  std::mt19937_64 rng(37);
  const auto g = make_grid(GridKind::uniform, 200, 25.0);
  const kernels::KernelTable t(g, 2);
  for (const auto &c : sample_configs())
    for (int trial = 0; trial < 3; ++trial) {
      const auto f = random_set(g, c, rng, true);
      const double e = rhf_energy(t, c, f).total;
      for (double eps : {0.01, 0.1, 0.5, 1.0 / c.Z, 1.0, 3.0})
        CHECK(e >= lower_bound(c, f, eps));
      double s = 0.0;
      for (std::size_t j = 0; j < f.size(); ++j)
        s += (2 * c.shells[j].l + 1) * std::pow(f[j].norm(), 2);
      CHECK(lower_bound(c, f, 1.0 / c.Z) == Approx(-2.0 * c.Z * c.Z * s).epsilon(1e-12));
    }
  const auto c = rhf(2, {0});
  const auto f = random_set(g, c, rng);
  CHECK_THROWS_AS(lower_bound(c, f, 0.0), Error);
  CHECK(lower_bound(c, OrbitalSet<double>{RadialFunction(g)}, 0.5) == 0.0);
}

TEST_CASE("energy is invariant under rotations within a channel") {
  std::mt19937_64 rng(38);
  std::uniform_real_distribution<double> angle(0.0, 6.283185307179586);
  const auto g = make_grid(GridKind::exponential, 150, 20.0);
  const kernels::KernelTable t(g, 1);
  const auto c = rhf(10, {0, 1, 0});
  for (int trial = 0; trial < 10; ++trial) {
    const auto f = random_set(g, c, rng);
    const double e = rhf_energy(t, c, f).total;
    const double th = angle(rng);
    auto r = f;
    r[0] = std::cos(th) * f[0] + std::sin(th) * f[2];
    r[2] = -std::sin(th) * f[0] + std::cos(th) * f[2];
    CHECK(rhf_energy(t, c, r).total == Approx(e).epsilon(1e-12));

    // complex unitary mixing plus independent phases
    const double ph1 = angle(rng), ph2 = angle(rng), ph3 = angle(rng);
    OrbitalSet<cd> z;
    for (const auto &x : f)
      z.push_back(x.cast<cd>());
    const cd a = std::polar(std::cos(th), ph1), b = std::polar(std::sin(th), ph2);
    OrbitalSet<cd> w = z;
    w[0] = a * z[0] + b * z[2];
    w[2] = -std::conj(b) * z[0] + std::conj(a) * z[2];
    w[1] *= std::polar(1.0, ph3);
    CHECK(rhf_energy(t, c, w).total == Approx(e).epsilon(1e-12));
  }
}

TEST_CASE("UHF with paired spins equals RHF") {
  std::mt19937_64 rng(39);
  const auto g = make_grid(GridKind::exponential, 150, 20.0);
  const kernels::KernelTable t(g, 2);
  for (const auto &c : sample_configs()) {
    const auto f = random_set(g, c, rng);
    Configuration u;
    u.Z = c.Z;
    u.model = Model::uhf;
    std::vector<RadialFunction> ab;
    for (auto spin : {Spin::alpha, Spin::beta})
      for (std::size_t i = 0; i < c.shells.size(); ++i) {
        u.shells.push_back({c.shells[i].l, spin});
        ab.push_back(f[i]);
      }
    CHECK(uhf_energy(t, u, ab).total == Approx(rhf_energy(t, c, f).total).epsilon(1e-12));
    CHECK(uhf_energy(t, u, f, f).total == Approx(rhf_energy(t, c, f).total).epsilon(1e-12));
  }
}

TEST_CASE("density functional equals the orbital functional for orthonormal sets") {
  std::mt19937_64 rng(40);
  const auto g = make_grid(GridKind::uniform, 150, 20.0);
  const kernels::KernelTable t(g, 2);
  for (const auto &c : sample_configs()) {
    const auto f = random_set(g, c, rng);
    const auto d = density_from_orbitals(g, c, f);
    const auto a = density_energy(t, c.Z, d), b = rhf_energy(t, c, f);
    CHECK(a.total == Approx(b.total).epsilon(1e-12));
    CHECK(a.exchange == Approx(b.exchange).epsilon(1e-12));
    CHECK(b.exchange >= 0.0);
    CHECK(b.exchange <= b.direct);
  }
}
