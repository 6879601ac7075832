#pragma once

#include <Eigen/Dense>

#include <functional>
#include <optional>

namespace radhf::linalg {

// Lowest eigenpairs of a real symmetric matrix, ascending.
struct EigenResult {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors; // columns
  int iterations = 0;      // Lanczos steps; 0 for direct solvers
};

// Symmetric tridiagonal matrix (LAPACK dstevr).
EigenResult tridiagonal_lowest(const Eigen::VectorXd &diagonal,
                               const Eigen::VectorXd &off_diagonal, int count);

// Dense symmetric matrix (LAPACK dsyevr, index range).
EigenResult dense_lowest(const Eigen::MatrixXd &matrix, int count);

// Shift-invert Lanczos with full reorthogonalization on (A - shift)^{-1}.
// shift must lie below the spectrum; when the Cholesky factorization fails
// the shift is lowered and the factorization retried. Converged when every
// returned pair satisfies ||A v - lambda v|| <= residual_tol * ||A||_inf.
EigenResult lanczos_lowest(const Eigen::MatrixXd &matrix, int count, double shift,
                           double residual_tol, int max_steps);

// Block Davidson for the lowest eigenpairs of a symmetric operator given by
// its action on blocks of column vectors. precondition(r, theta) returns an
// approximate solution of (A - theta) t = r. Starts from initial (orthonormal
// columns, at least count of them) and stops when every residual norm is at
// most tolerance. Throws EigenError after max_iterations.
struct DavidsonOperator {
  std::function<Eigen::MatrixXd(const Eigen::MatrixXd &)> apply;
  std::function<Eigen::VectorXd(const Eigen::VectorXd &, double)> precondition;
};
EigenResult davidson_lowest(const DavidsonOperator &op, const Eigen::MatrixXd &initial,
                            int count, double tolerance, int max_iterations,
                            int max_basis = 48);

// Solves (T - shift) x = b for the symmetric tridiagonal T (Thomas algorithm).
Eigen::VectorXd tridiagonal_solve(const Eigen::VectorXd &diagonal,
                                  const Eigen::VectorXd &off_diagonal, double shift,
                                  const Eigen::VectorXd &b);

// Row-sum norm, an upper bound of the spectral norm for symmetric matrices.
double inf_norm(const Eigen::MatrixXd &matrix);

} // namespace radhf::linalg
