#pragma once

#include "oracles.hpp"

#include "radhf/configuration.hpp"
#include "radhf/grid.hpp"

#include <random>
#include <vector>

namespace fixture {

inline radhf::Configuration rhf(double Z, std::vector<int> ls) {
  radhf::Configuration c;
  c.Z = Z;
  for (int l : ls)
    c.shells.push_back({l, radhf::Spin::alpha});
  return c;
}

// Random orbitals, orthogonal within each channel. Unit norms, or norms drawn
// from [0.3, 1] when scaled is set.
inline std::vector<radhf::RadialFunction> random_set(const radhf::GridPtr &g,
                                                     const radhf::Configuration &c,
                                                     std::mt19937_64 &rng, bool scaled = false) {
  std::uniform_real_distribution<double> norm(0.3, 1.0);
  std::vector<radhf::RadialFunction> out;
  for (std::size_t i = 0; i < c.shells.size(); ++i) {
    radhf::RadialFunction f(g);
    do {
      f = oracle::random_orbital(g, c.shells[i].l, rng);
      for (std::size_t j = 0; j < i; ++j)
        if (c.shells[j].l == c.shells[i].l && c.shells[j].spin == c.shells[i].spin)
          f -= (inner(out[j], f) / std::pow(out[j].norm(), 2)) * out[j];
    } while (f.norm() < 1e-3);
    f *= (scaled ? norm(rng) : 1.0) / f.norm();
    out.push_back(f);
  }
  return out;
}

} // namespace fixture
