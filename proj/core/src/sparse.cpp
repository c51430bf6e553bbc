#include "biotfs/sparse.hpp"

#include <Eigen/SparseCholesky>
#include <Eigen/SparseCore>

#include <algorithm>
#include <cmath>
#include <string>

#include "biotfs/errors.hpp"

namespace biotfs {

SparseMatrix::SparseMatrix(std::size_t nrows, std::size_t ncols)
    : nrows_(nrows), ncols_(ncols), offsets_(nrows + 1, 0) {}

SparseMatrix SparseMatrix::from_triplets(std::size_t nrows, std::size_t ncols,
                                         std::vector<Triplet> triplets) {
  for (const auto& t : triplets) {
    if (t.row >= nrows || t.col >= ncols) {
      throw DimensionMismatch("triplet (" + std::to_string(t.row) + ", " +
                              std::to_string(t.col) + ") outside " +
                              std::to_string(nrows) + "x" + std::to_string(ncols));
    }
  }
  std::sort(triplets.begin(), triplets.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });

  SparseMatrix m(nrows, ncols);
  m.cols_.reserve(triplets.size());
  m.values_.reserve(triplets.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < nrows; ++i) {
    while (k < triplets.size() && triplets[k].row == i) {
      const std::size_t j = triplets[k].col;
      double v = 0.0;
      while (k < triplets.size() && triplets[k].row == i && triplets[k].col == j) {
        v += triplets[k].value;
        ++k;
      }
      m.cols_.push_back(j);
      m.values_.push_back(v);
    }
    m.offsets_[i + 1] = m.cols_.size();
  }
  return m;
}

SparseMatrix SparseMatrix::identity(std::size_t n) {
  const Vector ones(n, 1.0);
  return diagonal(ones);
}

SparseMatrix SparseMatrix::diagonal(std::span<const double> d) {
  SparseMatrix m(d.size(), d.size());
  m.cols_.resize(d.size());
  m.values_.assign(d.begin(), d.end());
  for (std::size_t i = 0; i < d.size(); ++i) {
    m.cols_[i] = i;
    m.offsets_[i + 1] = i + 1;
  }
  return m;
}

double SparseMatrix::coeff(std::size_t i, std::size_t j) const {
  if (i >= nrows_ || j >= ncols_) throw DimensionMismatch("coeff index out of range");
  const auto first = cols_.begin() + static_cast<std::ptrdiff_t>(offsets_[i]);
  const auto last = cols_.begin() + static_cast<std::ptrdiff_t>(offsets_[i + 1]);
  const auto it = std::lower_bound(first, last, j);
  if (it == last || *it != j) return 0.0;
  return values_[static_cast<std::size_t>(it - cols_.begin())];
}

SparseMatrix SparseMatrix::transpose() const {
  SparseMatrix t(ncols_, nrows_);
  std::vector<std::size_t> count(ncols_ + 1, 0);
  for (const auto j : cols_) ++count[j + 1];
  for (std::size_t j = 0; j < ncols_; ++j) count[j + 1] += count[j];
  t.offsets_ = count;
  t.cols_.resize(cols_.size());
  t.values_.resize(values_.size());
  // Rows are visited in increasing order, so each transposed row stays sorted.
  for (std::size_t i = 0; i < nrows_; ++i) {
    for (std::size_t k = offsets_[i]; k < offsets_[i + 1]; ++k) {
      const std::size_t dst = count[cols_[k]]++;
      t.cols_[dst] = i;
      t.values_[dst] = values_[k];
    }
  }
  return t;
}

SparseMatrix SparseMatrix::extract(std::span<const std::size_t> row_map,
                                   std::span<const std::size_t> col_map) const {
  constexpr std::size_t kDropped = static_cast<std::size_t>(-1);
  std::vector<std::size_t> new_col(ncols_, kDropped);
  for (std::size_t c = 0; c < col_map.size(); ++c) {
    if (col_map[c] >= ncols_) throw DimensionMismatch("extract: column out of range");
    new_col[col_map[c]] = c;
  }
  SparseMatrix sub(row_map.size(), col_map.size());
  for (std::size_t r = 0; r < row_map.size(); ++r) {
    const std::size_t i = row_map[r];
    if (i >= nrows_) throw DimensionMismatch("extract: row out of range");
    const std::size_t row_start = sub.cols_.size();
    for (std::size_t k = offsets_[i]; k < offsets_[i + 1]; ++k) {
      if (new_col[cols_[k]] == kDropped) continue;
      sub.cols_.push_back(new_col[cols_[k]]);
      sub.values_.push_back(values_[k]);
    }
    // col_map need not be monotone; restore sorted order within the row.
    std::vector<std::pair<std::size_t, double>> row;
    for (std::size_t k = row_start; k < sub.cols_.size(); ++k) {
      row.emplace_back(sub.cols_[k], sub.values_[k]);
    }
    std::sort(row.begin(), row.end());
    for (std::size_t k = 0; k < row.size(); ++k) {
      sub.cols_[row_start + k] = row[k].first;
      sub.values_[row_start + k] = row[k].second;
    }
    sub.offsets_[r + 1] = sub.cols_.size();
  }
  return sub;
}

SparseMatrix SparseMatrix::scaled(double s) const {
  SparseMatrix m = *this;
  for (auto& v : m.values_) v *= s;
  return m;
}

double SparseMatrix::asymmetry() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < nrows_; ++i) {
    for (std::size_t k = offsets_[i]; k < offsets_[i + 1]; ++k) {
      const std::size_t j = cols_[k];
      const double other = j < nrows_ && i < ncols_ ? coeff(j, i) : 0.0;
      worst = std::max(worst, std::abs(values_[k] - other));
    }
  }
  return worst;
}

std::vector<double> SparseMatrix::to_dense() const {
  std::vector<double> d(nrows_ * ncols_, 0.0);
  for (std::size_t i = 0; i < nrows_; ++i) {
    for (std::size_t k = offsets_[i]; k < offsets_[i + 1]; ++k) {
      d[i * ncols_ + cols_[k]] += values_[k];
    }
  }
  return d;
}

Vector matvec(const SparseMatrix& a, std::span<const double> x) {
  if (x.size() != a.cols()) {
    throw DimensionMismatch("matvec: matrix has " + std::to_string(a.cols()) +
                            " columns, vector has " + std::to_string(x.size()));
  }
  const auto off = a.row_offsets();
  const auto col = a.col_indices();
  const auto val = a.values();
  Vector y(a.rows(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double s = 0.0;
    for (std::size_t k = off[i]; k < off[i + 1]; ++k) s += val[k] * x[col[k]];
    y[i] = s;
  }
  return y;
}

Vector matvec_transpose(const SparseMatrix& a, std::span<const double> x) {
  if (x.size() != a.rows()) {
    throw DimensionMismatch("matvec_transpose: matrix has " + std::to_string(a.rows()) +
                            " rows, vector has " + std::to_string(x.size()));
  }
  const auto off = a.row_offsets();
  const auto col = a.col_indices();
  const auto val = a.values();
  Vector y(a.cols(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = off[i]; k < off[i + 1]; ++k) y[col[k]] += val[k] * x[i];
  }
  return y;
}

double dot(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw DimensionMismatch("dot: length mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

double norm2(std::span<const double> x) { return std::sqrt(dot(x, x)); }

double m_norm(const SparseMatrix& m, std::span<const double> x) {
  const Vector mx = matvec(m, x);
  return std::sqrt(std::max(0.0, dot(x, mx)));
}

void axpy(double a, std::span<const double> x, std::span<double> y) {
  if (x.size() != y.size()) throw DimensionMismatch("axpy: length mismatch");
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += a * x[i];
}

CgResult cg_solve(const LinearOperator& a, std::span<const double> b, double tol,
                  int maxit, std::span<const double> x0) {
  const std::size_t n = b.size();
  CgResult res;
  res.x = x0.empty() ? Vector(n, 0.0) : Vector(x0.begin(), x0.end());
  if (res.x.size() != n) throw DimensionMismatch("cg_solve: initial guess length");

  const double bnorm = norm2(b);
  if (bnorm == 0.0) {
    res.x.assign(n, 0.0);
    return res;
  }

  Vector r(b.begin(), b.end());
  if (!x0.empty()) {
    const Vector ax = a(res.x);
    axpy(-1.0, ax, r);
  }
  double rr = dot(r, r);
  res.relative_residual = std::sqrt(rr) / bnorm;
  if (res.relative_residual <= tol) return res;

  Vector p = r;
  for (int it = 1; it <= maxit; ++it) {
    const Vector ap = a(p);
    const double pap = dot(p, ap);
    if (!(pap > 0.0)) {
      throw NotPositiveDefinite("cg_solve: operator is not positive definite (p^T A p = " +
                                std::to_string(pap) + ")");
    }
    const double step = rr / pap;
    axpy(step, p, res.x);
    axpy(-step, ap, r);
    const double rr_new = dot(r, r);
    res.iterations = it;
    res.relative_residual = std::sqrt(rr_new) / bnorm;
    if (res.relative_residual <= tol) return res;
    const double beta = rr_new / rr;
    rr = rr_new;
    for (std::size_t i = 0; i < n; ++i) p[i] = r[i] + beta * p[i];
  }
  throw NonConvergence("cg_solve: no convergence after " + std::to_string(maxit) +
                           " iterations, relative residual " +
                           std::to_string(res.relative_residual),
                       maxit, res.relative_residual);
}

CgResult cg_solve(const SparseMatrix& a, std::span<const double> b, double tol,
                  int maxit, std::span<const double> x0) {
  if (a.rows() != a.cols() || a.rows() != b.size()) {
    throw DimensionMismatch("cg_solve: matrix/vector size mismatch");
  }
  return cg_solve([&a](std::span<const double> x) { return matvec(a, x); }, b, tol, maxit,
                  x0);
}

struct Factorization::Impl {
  Eigen::SimplicialLLT<Eigen::SparseMatrix<double>, Eigen::Lower,
                       Eigen::AMDOrdering<int>>
      llt;
};

Factorization::Factorization(const SparseMatrix& a) : n_(a.rows()), impl_(new Impl) {
  if (a.rows() != a.cols()) throw DimensionMismatch("factorize: matrix is not square");
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(a.nonzeros());
  const auto off = a.row_offsets();
  const auto col = a.col_indices();
  const auto val = a.values();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = off[i]; k < off[i + 1]; ++k) {
      trip.emplace_back(static_cast<int>(i), static_cast<int>(col[k]), val[k]);
    }
  }
  Eigen::SparseMatrix<double> m(static_cast<int>(n_), static_cast<int>(n_));
  m.setFromTriplets(trip.begin(), trip.end());
  impl_->llt.compute(m);
  if (impl_->llt.info() != Eigen::Success) {
    throw NotPositiveDefinite("factorize: non-positive pivot, matrix is not SPD");
  }
}

Factorization::~Factorization() = default;
Factorization::Factorization(Factorization&&) noexcept = default;
Factorization& Factorization::operator=(Factorization&&) noexcept = default;

Vector Factorization::solve(std::span<const double> b) const {
  if (b.size() != n_) throw DimensionMismatch("Factorization::solve: rhs length mismatch");
  const Eigen::Map<const Eigen::VectorXd> rhs(b.data(), static_cast<Eigen::Index>(n_));
  Vector x(n_);
  Eigen::Map<Eigen::VectorXd> sol(x.data(), static_cast<Eigen::Index>(n_));
  sol = impl_->llt.solve(rhs);
  return x;
}

}  // namespace biotfs
