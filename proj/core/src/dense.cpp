#include "biotfs/dense.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include "biotfs/errors.hpp"

namespace biotfs {

namespace {

Eigen::MatrixXd to_eigen(const DenseMatrix& a) {
  Eigen::MatrixXd m(a.rows, a.cols);
  for (std::size_t i = 0; i < a.rows; ++i) {
    for (std::size_t j = 0; j < a.cols; ++j) m(i, j) = a(i, j);
  }
  return m;
}

}  // namespace

DenseMatrix DenseMatrix::from_sparse(const SparseMatrix& a) {
  DenseMatrix d(a.rows(), a.cols());
  d.data = a.to_dense();
  return d;
}

GeneralizedEigen dense_generalized_symmetric_eigen(const DenseMatrix& s, const DenseMatrix& m) {
  if (s.rows != s.cols || m.rows != m.cols || s.rows != m.rows) {
    throw DimensionMismatch("dense_generalized_symmetric_eigen: S and M must be square and equal-sized");
  }
  const Eigen::MatrixXd se = to_eigen(s);
  const Eigen::MatrixXd me = to_eigen(m);

  Eigen::LLT<Eigen::MatrixXd> llt(me);
  if (llt.info() != Eigen::Success) {
    throw NotPositiveDefinite("dense_generalized_symmetric_eigen: M is not SPD");
  }

  // The solver symmetrizes implicitly by reading the lower triangle only.
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> solver(
      se, me, Eigen::ComputeEigenvectors | Eigen::Ax_lBx);
  if (solver.info() != Eigen::Success) {
    throw Error("dense_generalized_symmetric_eigen: eigensolver failed");
  }

  GeneralizedEigen out;
  const auto n = static_cast<std::size_t>(se.rows());
  out.eigenvalues.resize(n);
  out.eigenvectors = DenseMatrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    out.eigenvalues[k] = solver.eigenvalues()(static_cast<Eigen::Index>(k));
    for (std::size_t i = 0; i < n; ++i) {
      out.eigenvectors(i, k) =
          solver.eigenvectors()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k));
    }
  }
  return out;
}

}  // namespace biotfs
