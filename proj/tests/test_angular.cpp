#include "radhf/angular.hpp"
#include "radhf/errors.hpp"

#include "oracles.hpp"

#include <catch_amalgamated.hpp>

using namespace radhf::angular;
using Catch::Approx;

TEST_CASE("3j squares at documented values") {
  CHECK(wigner3j_zero_squared(0, 0, 0) == 1.0);
  CHECK(wigner3j_zero_squared(3, 3, 0) == Approx(1.0 / 7.0).epsilon(1e-14));
  CHECK(wigner3j_zero_squared(1, 1, 2) == Approx(2.0 / 15.0).epsilon(1e-14));
  CHECK(wigner3j_zero_squared(1, 2, 2) == 0.0);
  CHECK(wigner3j_zero_squared(0, 1, 1) == Approx(1.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("3j squares for (l, l, 0) are 1/(2l+1)") {
  for (int l = 0; l <= 12; ++l)
    CHECK(wigner3j_zero_squared(l, l, 0) == Approx(1.0 / (2 * l + 1)).epsilon(1e-13));
}

TEST_CASE("parity and triangle selection rules give exact zeros") {
  for (int a = 0; a <= 12; ++a)
    for (int b = 0; b <= 12; ++b)
      for (int c = 0; c <= 12; ++c) {
        const double v = wigner3j_zero_squared(a, b, c);
        const bool allowed = (a + b + c) % 2 == 0 && c >= std::abs(a - b) && c <= a + b;
        if (!allowed)
          CHECK(v == 0.0);
        else
          CHECK(v > 0.0);
        CHECK(v <= 1.0);
      }
}

TEST_CASE("3j squares match the Racah factorial form and the triple product integral") {
  const auto rule = oracle::gauss(64);
  for (int a = 0; a <= 8; ++a)
    for (int b = 0; b <= 8; ++b)
      for (int c = 0; c <= 8; ++c) {
        double q = 0.0;
        for (std::size_t i = 0; i < rule.x.size(); ++i)
          q += rule.w[i] * oracle::legendre(a, rule.x[i]) * oracle::legendre(b, rule.x[i]) *
               oracle::legendre(c, rule.x[i]);
        q *= 0.5;
        const double v = wigner3j_zero_squared(a, b, c);
        CHECK(std::fabs(v - q) <= 1e-12);
        CHECK(std::fabs(v - oracle::three_j_squared(a, b, c)) <= 1e-13);
      }
}

TEST_CASE("weighted sum of 3j squares over k is one") {
  for (int a = 0; a <= 8; ++a)
    for (int b = 0; b <= 8; ++b) {
      double s = 0.0;
      for (int k = 0; k <= a + b; ++k)
        s += (2 * k + 1) * wigner3j_zero_squared(a, b, k);
      CHECK(std::fabs(s - 1.0) <= 1e-12);
    }
}

TEST_CASE("large l stays finite through log factorials") {
  const double v = wigner3j_zero_squared(60, 60, 0);
  CHECK(v == Approx(1.0 / 121.0).epsilon(1e-11));
}

TEST_CASE("Legendre polynomial values and recurrence") {
  for (int n = 0; n <= 20; ++n)
    CHECK(legendre_p(n, 1.0) == Approx(1.0));
  CHECK(legendre_p(1, 0.3) == Approx(0.3));
  CHECK(legendre_p(2, 0.5) == Approx(-0.125).epsilon(1e-15));
  CHECK_THROWS(legendre_p(2, 1.5));
  for (int n = 1; n < 20; ++n)
    for (int i = 0; i < 100; ++i) {
      const double t = -1.0 + 2.0 * i / 99.0;
      const double lhs = (n + 1) * legendre_p(n + 1, t);
      const double rhs = (2 * n + 1) * t * legendre_p(n, t) - n * legendre_p(n - 1, t);
      CHECK(std::fabs(lhs - rhs) <= 1e-13);
      CHECK(std::fabs(legendre_p(n, t)) <= 1.0 + 1e-14);
    }
}

TEST_CASE("Gauss-Legendre rule integrates polynomials exactly") {
  const auto rule = gauss_legendre(10);
  for (int p = 0; p < 20; ++p) {
    double s = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
      s += rule.weights[i] * std::pow(rule.nodes[i], p);
    const double exact = p % 2 ? 0.0 : 2.0 / (p + 1);
    CHECK(std::fabs(s - exact) <= 1e-14);
  }
}

TEST_CASE("coefficient table agrees with direct evaluation and supports overrides") {
  const CoefficientTable t(6);
  for (int a = 0; a <= 6; ++a)
    for (int b = 0; b <= 6; ++b)
      for (int k = 0; k <= 12; ++k)
        CHECK(t(a, b, k) == wigner3j_zero_squared(a, b, k));
  const auto bad = t.with_override(1, 2, 3, 0.5);
  CHECK(bad(1, 2, 3) == 0.5);
  CHECK(bad(2, 1, 3) == 0.5);
  CHECK(t(1, 2, 3) == wigner3j_zero_squared(1, 2, 3));
  CHECK(CoefficientTable::shared(4).max_l() >= 4);
}

TEST_CASE("coupling range spans |l-l'| to l+l'") {
  CHECK(coupling_range(2, 5) == std::pair{3, 7});
  CHECK(coupling_range(4, 1) == std::pair{3, 5});
}
