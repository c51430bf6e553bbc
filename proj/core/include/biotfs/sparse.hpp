#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <vector>

namespace biotfs {

using Vector = std::vector<double>;

/// Coordinate-format entry used while assembling; duplicates are summed.
struct Triplet {
  std::size_t row;
  std::size_t col;
  double value;
};

/// Compressed sparse row matrix. Column indices are sorted and unique within
/// each row. Instances are immutable after construction.
class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(std::size_t nrows, std::size_t ncols);

  /// Builds a CSR matrix from triplets, summing duplicates. Entries whose sum is
  /// exactly zero are kept so the sparsity pattern is assembly-determined.
  static SparseMatrix from_triplets(std::size_t nrows, std::size_t ncols,
                                    std::vector<Triplet> triplets);
  static SparseMatrix identity(std::size_t n);
  static SparseMatrix diagonal(std::span<const double> d);

  std::size_t rows() const { return nrows_; }
  std::size_t cols() const { return ncols_; }
  std::size_t nonzeros() const { return values_.size(); }

  std::span<const std::size_t> row_offsets() const { return offsets_; }
  std::span<const std::size_t> col_indices() const { return cols_; }
  std::span<const double> values() const { return values_; }

  /// Entry (i, j), zero when not stored. Binary search within the row.
  double coeff(std::size_t i, std::size_t j) const;

  SparseMatrix transpose() const;

  /// Submatrix with the given rows and columns, renumbered in the order given.
  SparseMatrix extract(std::span<const std::size_t> row_map,
                       std::span<const std::size_t> col_map) const;

  SparseMatrix scaled(double s) const;

  /// Largest |a_ij - a_ji| over stored entries.
  double asymmetry() const;

  /// Dense row-major copy, for oracle-scale checks.
  std::vector<double> to_dense() const;

 private:
  std::size_t nrows_ = 0;
  std::size_t ncols_ = 0;
  std::vector<std::size_t> offsets_{0};
  std::vector<std::size_t> cols_;
  std::vector<double> values_;
};

/// y = A x. Throws DimensionMismatch.
Vector matvec(const SparseMatrix& a, std::span<const double> x);
/// y = A^T x without forming the transpose.
Vector matvec_transpose(const SparseMatrix& a, std::span<const double> x);

double dot(std::span<const double> x, std::span<const double> y);
double norm2(std::span<const double> x);
/// sqrt(x^T M x).
double m_norm(const SparseMatrix& m, std::span<const double> x);
/// y += a * x
void axpy(double a, std::span<const double> x, std::span<double> y);

/// Linear operator view used by the Krylov and eigen iterations.
using LinearOperator = std::function<Vector(std::span<const double>)>;

struct CgResult {
  Vector x;
  int iterations = 0;
  double relative_residual = 0.0;
};

/// Conjugate gradients on an SPD operator. Stops when ||b - A x|| <= tol ||b||.
/// Throws NonConvergence (carrying the final residual) after maxit iterations.
CgResult cg_solve(const LinearOperator& a, std::span<const double> b, double tol,
                  int maxit, std::span<const double> x0 = {});
CgResult cg_solve(const SparseMatrix& a, std::span<const double> b, double tol,
                  int maxit, std::span<const double> x0 = {});

/// Sparse Cholesky factorization of an SPD matrix, fill-reducing ordered.
/// solve() is const and may be called concurrently from several threads.
class Factorization {
 public:
  explicit Factorization(const SparseMatrix& a);
  ~Factorization();
  Factorization(Factorization&&) noexcept;
  Factorization& operator=(Factorization&&) noexcept;
  Factorization(const Factorization&) = delete;
  Factorization& operator=(const Factorization&) = delete;

  std::size_t size() const { return n_; }
  Vector solve(std::span<const double> b) const;

 private:
  struct Impl;
  std::size_t n_ = 0;
  std::unique_ptr<Impl> impl_;
};

inline Factorization factorize(const SparseMatrix& a) { return Factorization(a); }
inline Vector solve(const Factorization& f, std::span<const double> b) { return f.solve(b); }

}  // namespace biotfs
