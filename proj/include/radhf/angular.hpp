#pragma once

#include <utility>
#include <vector>

namespace radhf::angular {

// Square of the 3j symbol (l1 l2 l3; 0 0 0). Exact zero when l1+l2+l3 is
// odd or the triangle condition fails. Evaluated in log-factorial space;
// throws PrecisionError when the estimated relative error exceeds 1e-12.
double wigner3j_zero_squared(int l1, int l2, int l3);

// Legendre polynomial P_n(t) by the three-term recurrence. |t| <= 1.
double legendre_p(int n, double t);

// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussRule gauss_legendre(int order);

// Immutable cache of squared 3j coefficients for l, l' <= max_l and every k.
class CoefficientTable {
public:
  explicit CoefficientTable(int max_l);

  int max_l() const { return max_l_; }

  // (l l' k; 0 0 0)^2; zero outside the selection rules.
  double operator()(int l1, int l2, int k) const;

  // Copy with one stored entry replaced (and its l1<->l2 mirror). Used to
  // exercise the validation suite against a corrupted table.
  CoefficientTable with_override(int l1, int l2, int k, double value) const;

  // Process-wide table large enough for max_l; grown lazily, never shrunk.
  static const CoefficientTable &shared(int max_l);

private:
  std::size_t index(int l1, int l2, int k) const;

  int max_l_;
  std::vector<double> entries_;
};

// Smallest and largest k with a parity-allowed nonzero coefficient for (l1, l2).
inline std::pair<int, int> coupling_range(int l1, int l2) {
  return {l1 > l2 ? l1 - l2 : l2 - l1, l1 + l2};
}

} // namespace radhf::angular
