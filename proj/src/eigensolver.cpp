#include "radhf/eigensolver.hpp"

#include "radhf/errors.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include <fmt/format.h>
#include <lapacke.h>

namespace radhf::linalg {

double inf_norm(const Eigen::MatrixXd &matrix) {
  return matrix.cwiseAbs().rowwise().sum().maxCoeff();
}

EigenResult tridiagonal_lowest(const Eigen::VectorXd &diagonal,
                               const Eigen::VectorXd &off_diagonal, int count) {
  const lapack_int n = static_cast<lapack_int>(diagonal.size());
  if (count < 1 || count > n)
    throw EigenError(fmt::format("tridiagonal_lowest: count {} outside [1, {}]", count, n));
  Eigen::VectorXd d = diagonal;
  Eigen::VectorXd e(n);
  e.setZero();
  e.head(n - 1) = off_diagonal;
  Eigen::VectorXd w(n);
  Eigen::MatrixXd z(n, count);
  std::vector<lapack_int> support(2 * static_cast<std::size_t>(count));
  lapack_int found = 0;
  const lapack_int info =
      LAPACKE_dstevr(LAPACK_COL_MAJOR, 'V', 'I', n, d.data(), e.data(), 0.0, 0.0, 1, count,
                     0.0, &found, w.data(), z.data(), n, support.data());
  if (info != 0 || found != count)
    throw EigenError(fmt::format("dstevr failed: info = {}, found {} of {}", info, found, count));
  return {w.head(count), z, 0};
}

EigenResult dense_lowest(const Eigen::MatrixXd &matrix, int count) {
  const lapack_int n = static_cast<lapack_int>(matrix.rows());
  if (count < 1 || count > n)
    throw EigenError(fmt::format("dense_lowest: count {} outside [1, {}]", count, n));
  Eigen::MatrixXd a = matrix;
  Eigen::VectorXd w(n);
  Eigen::MatrixXd z(n, count);
  std::vector<lapack_int> support(2 * static_cast<std::size_t>(count));
  lapack_int found = 0;
  const lapack_int info =
      LAPACKE_dsyevr(LAPACK_COL_MAJOR, 'V', 'I', 'L', n, a.data(), n, 0.0, 0.0, 1, count, 0.0,
                     &found, w.data(), z.data(), n, support.data());
  if (info != 0 || found != count)
    throw EigenError(fmt::format("dsyevr failed: info = {}, found {} of {}", info, found, count));
  return {w.head(count), z, 0};
}

EigenResult lanczos_lowest(const Eigen::MatrixXd &matrix, int count, double shift,
                           double residual_tol, int max_steps) {
  const int n = static_cast<int>(matrix.rows());
  if (count < 1 || count > n)
    throw EigenError(fmt::format("lanczos_lowest: count {} outside [1, {}]", count, n));
  max_steps = std::min(max_steps, n);

  Eigen::LLT<Eigen::MatrixXd> factor;
  for (int attempt = 0;; ++attempt) {
    Eigen::MatrixXd shifted = matrix;
    shifted.diagonal().array() -= shift;
    factor.compute(shifted);
    if (factor.info() == Eigen::Success)
      break;
    if (attempt == 8)
      throw EigenError(fmt::format("lanczos_lowest: no shift below the spectrum found (last {})",
                                   shift));
    shift -= 1.0 + std::fabs(shift);
  }

  const double a_norm = inf_norm(matrix);
  std::mt19937_64 rng(0x5eedULL);
  std::uniform_real_distribution<double> uniform(-1.0, 1.0);
  auto random_vector = [&] {
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i)
      v[i] = uniform(rng);
    return v;
  };

  Eigen::MatrixXd q(n, max_steps + 1);
  std::vector<double> alpha, beta;
  q.col(0) = random_vector().normalized();

  double worst_residual = 0.0;
  for (int j = 0; j < max_steps; ++j) {
    Eigen::VectorXd w = factor.solve(q.col(j));
    const double a_j = q.col(j).dot(w);
    alpha.push_back(a_j);
    for (int pass = 0; pass < 2; ++pass)
      w -= q.leftCols(j + 1) * (q.leftCols(j + 1).transpose() * w);
    double b_j = w.norm();
    const int m = j + 1;

    const bool exhausted = b_j <= 1e-14 * std::fabs(a_j);
    if (m >= count && (m % 5 == 0 || exhausted || m == max_steps)) {
      Eigen::VectorXd d = Eigen::Map<Eigen::VectorXd>(alpha.data(), m);
      Eigen::VectorXd e = Eigen::Map<Eigen::VectorXd>(beta.data(), m - 1);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ritz;
      ritz.computeFromTridiagonal(d, e, Eigen::ComputeEigenvectors);
      // largest eigenvalues of the inverse are the lowest of the matrix
      bool estimates_ok = true;
      for (int c = 0; c < count; ++c) {
        const int idx = m - 1 - c;
        const double theta = ritz.eigenvalues()[idx];
        if (std::fabs(b_j * ritz.eigenvectors()(m - 1, idx)) > 1e-12 * std::fabs(theta))
          estimates_ok = false;
      }
      if (estimates_ok || m == max_steps) {
        EigenResult result;
        result.values.resize(count);
        result.vectors.resize(n, count);
        result.iterations = m;
        worst_residual = 0.0;
        for (int c = 0; c < count; ++c) {
          const int idx = m - 1 - c;
          Eigen::VectorXd v = q.leftCols(m) * ritz.eigenvectors().col(idx);
          v.normalize();
          const Eigen::VectorXd av = matrix * v;
          const double lambda = v.dot(av);
          worst_residual = std::max(worst_residual, (av - lambda * v).norm());
          result.values[c] = lambda;
          result.vectors.col(c) = v;
        }
        if (worst_residual <= residual_tol * a_norm) {
          // ascending order; Ritz values of the inverse came out descending in 1/(lambda - shift)
          std::vector<int> order(count);
          for (int c = 0; c < count; ++c)
            order[c] = c;
          std::sort(order.begin(), order.end(),
                    [&](int x, int y) { return result.values[x] < result.values[y]; });
          EigenResult sorted = result;
          for (int c = 0; c < count; ++c) {
            sorted.values[c] = result.values[order[c]];
            sorted.vectors.col(c) = result.vectors.col(order[c]);
          }
          return sorted;
        }
      }
    }
    if (j + 1 == max_steps)
      break;
    if (exhausted) {
      // invariant subspace: continue with a fresh direction
      w = random_vector();
      for (int pass = 0; pass < 2; ++pass)
        w -= q.leftCols(j + 1) * (q.leftCols(j + 1).transpose() * w);
      q.col(j + 1) = w.normalized();
      b_j = 0.0;
    } else {
      q.col(j + 1) = w / b_j;
    }
    beta.push_back(b_j);
  }
  throw EigenError(fmt::format(
      "lanczos_lowest: not converged after {} steps (residual {:.3e}, tolerance {:.3e})",
      max_steps, worst_residual, residual_tol * a_norm));
}

Eigen::VectorXd tridiagonal_solve(const Eigen::VectorXd &diagonal,
                                  const Eigen::VectorXd &off_diagonal, double shift,
                                  const Eigen::VectorXd &b) {
  const Eigen::Index n = diagonal.size();
  Eigen::VectorXd c(n), x(n);
  double denom = diagonal[0] - shift;
  if (denom == 0.0)
    throw EigenError("tridiagonal_solve: zero pivot");
  c[0] = n > 1 ? off_diagonal[0] / denom : 0.0;
  x[0] = b[0] / denom;
  for (Eigen::Index i = 1; i < n; ++i) {
    denom = diagonal[i] - shift - off_diagonal[i - 1] * c[i - 1];
    if (denom == 0.0)
      throw EigenError("tridiagonal_solve: zero pivot");
    c[i] = i + 1 < n ? off_diagonal[i] / denom : 0.0;
    x[i] = (b[i] - off_diagonal[i - 1] * x[i - 1]) / denom;
  }
  for (Eigen::Index i = n - 2; i >= 0; --i)
    x[i] -= c[i] * x[i + 1];
  return x;
}

namespace {

// Orthogonalizes the columns of block against basis and among themselves;
// drops columns that become negligible.
Eigen::MatrixXd orthogonal_extension(const Eigen::MatrixXd &basis, Eigen::MatrixXd block) {
  Eigen::MatrixXd kept(block.rows(), 0);
  for (Eigen::Index c = 0; c < block.cols(); ++c) {
    Eigen::VectorXd v = block.col(c);
    const double start = v.norm();
    if (start == 0.0)
      continue;
    for (int pass = 0; pass < 2; ++pass) {
      if (basis.cols() > 0)
        v -= basis * (basis.transpose() * v);
      if (kept.cols() > 0)
        v -= kept * (kept.transpose() * v);
    }
    const double norm = v.norm();
    if (norm <= 1e-10 * start)
      continue;
    kept.conservativeResize(Eigen::NoChange, kept.cols() + 1);
    kept.col(kept.cols() - 1) = v / norm;
  }
  return kept;
}

} // namespace

EigenResult davidson_lowest(const DavidsonOperator &op, const Eigen::MatrixXd &initial,
                            int count, double tolerance, int max_iterations, int max_basis) {
  const Eigen::Index n = initial.rows();
  if (count < 1 || count > n || initial.cols() < count)
    throw EigenError("davidson_lowest: bad block size");
  max_basis = std::max<int>(max_basis, 3 * count);

  Eigen::MatrixXd V = orthogonal_extension(Eigen::MatrixXd(n, 0), initial);
  if (V.cols() < count)
    throw EigenError("davidson_lowest: initial block is rank deficient");
  Eigen::MatrixXd AV = op.apply(V);
  double worst = 0.0;
  for (int it = 0; it < max_iterations; ++it) {
    Eigen::MatrixXd H = V.transpose() * AV;
    H = 0.5 * (H + H.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ritz(H);
    const Eigen::MatrixXd Y = ritz.eigenvectors().leftCols(count);
    const Eigen::VectorXd theta = ritz.eigenvalues().head(count);
    Eigen::MatrixXd X = V * Y;
    Eigen::MatrixXd AX = AV * Y;
    const Eigen::MatrixXd R = AX - X * theta.asDiagonal();

    Eigen::MatrixXd corrections(n, 0);
    worst = 0.0;
    for (int c = 0; c < count; ++c) {
      const double res = R.col(c).norm();
      worst = std::max(worst, res);
      if (res > tolerance) {
        corrections.conservativeResize(Eigen::NoChange, corrections.cols() + 1);
        corrections.col(corrections.cols() - 1) = op.precondition(R.col(c), theta[c]);
      }
    }
    if (corrections.cols() == 0)
      return {theta, X, it + 1};

    if (V.cols() + corrections.cols() > max_basis) {
      // restart from the current Ritz vectors
      V = std::move(X);
      AV = std::move(AX);
    }
    Eigen::MatrixXd T = orthogonal_extension(V, corrections);
    if (T.cols() == 0)
      break;
    const Eigen::MatrixXd AT = op.apply(T);
    V.conservativeResize(Eigen::NoChange, V.cols() + T.cols());
    V.rightCols(T.cols()) = T;
    AV.conservativeResize(Eigen::NoChange, AV.cols() + AT.cols());
    AV.rightCols(AT.cols()) = AT;
  }
  throw EigenError(fmt::format("davidson_lowest: not converged (residual {:.3e}, tolerance {:.3e})",
                               worst, tolerance));
}

} // namespace radhf::linalg
