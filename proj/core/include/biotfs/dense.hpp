#pragma once

#include <cstddef>
#include <vector>

#include "biotfs/sparse.hpp"

namespace biotfs {

/// Row-major dense square or rectangular matrix, oracle-scale only.
struct DenseMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  DenseMatrix() = default;
  DenseMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}
  static DenseMatrix from_sparse(const SparseMatrix& a);

  double& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
};

struct GeneralizedEigen {
  Vector eigenvalues;        ///< ascending
  DenseMatrix eigenvectors;  ///< column k pairs with eigenvalues[k], M-orthonormal
};

/// Solves S v = lambda M v for symmetric S and SPD M by Cholesky reduction of M
/// followed by a symmetric eigensolve. Throws NotPositiveDefinite if M is not SPD.
GeneralizedEigen dense_generalized_symmetric_eigen(const DenseMatrix& s, const DenseMatrix& m);

}  // namespace biotfs
