#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "biotfs/errors.hpp"
#include "biotfs/sparse.hpp"
#include "oracles.hpp"

using namespace biotfs;

namespace {

// Random SPD matrix with a 1D Laplacian-plus-coupling pattern.
SparseMatrix random_spd(std::size_t n, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(0.1, 1.0);
  std::vector<Triplet> t;
  for (std::size_t i = 0; i < n; ++i) {
    double row = 0.0;
    for (std::size_t j : {i + 1, i + 3}) {
      if (j >= n) continue;
      const double w = u(rng);
      t.push_back({i, j, -w});
      t.push_back({j, i, -w});
      row += w;
    }
    t.push_back({i, i, 2.0 * row + 2.0 + u(rng)});
  }
  return SparseMatrix::from_triplets(n, n, std::move(t));
}

}  // namespace

TEST(SparseMatrix, TripletsAreSortedAndDuplicatesSummed) {
  const auto a = SparseMatrix::from_triplets(2, 3, {{1, 2, 1.0}, {0, 1, 2.0}, {1, 2, 3.0}, {1, 0, -1.0}});
  EXPECT_EQ(a.nonzeros(), 3u);
  EXPECT_DOUBLE_EQ(a.coeff(1, 2), 4.0);
  EXPECT_DOUBLE_EQ(a.coeff(0, 1), 2.0);
  EXPECT_DOUBLE_EQ(a.coeff(0, 0), 0.0);
  const auto cols = a.col_indices();
  EXPECT_EQ(cols[1], 0u);
  EXPECT_EQ(cols[2], 2u);
}

TEST(SparseMatrix, CancellingEntriesKeepTheirSlot) {
  const auto a = SparseMatrix::from_triplets(1, 1, {{0, 0, 1.0}, {0, 0, -1.0}});
  EXPECT_EQ(a.nonzeros(), 1u);
  EXPECT_EQ(a.coeff(0, 0), 0.0);
}

TEST(SparseMatrix, OutOfRangeTripletThrows) {
  EXPECT_THROW(SparseMatrix::from_triplets(2, 2, {{2, 0, 1.0}}), Error);
}

TEST(SparseMatrix, MatvecMatchesDense) {
  const auto a = SparseMatrix::from_triplets(3, 4, {{0, 0, 1.0}, {0, 3, 2.0}, {2, 1, -3.0}, {1, 2, 0.5}});
  const Vector x{1.0, 2.0, 3.0, 4.0};
  const Eigen::VectorXd ref = oracle::dense(a) * oracle::vec(x);
  const Vector y = matvec(a, x);
  for (int i = 0; i < 3; ++i) EXPECT_DOUBLE_EQ(y[i], ref(i));

  const Vector z{1.0, -1.0, 2.0};
  const Eigen::VectorXd reft = oracle::dense(a).transpose() * oracle::vec(z);
  const Vector yt = matvec_transpose(a, z);
  for (int i = 0; i < 4; ++i) EXPECT_DOUBLE_EQ(yt[i], reft(i));
  EXPECT_THROW(matvec(a, z), DimensionMismatch);
}

TEST(SparseMatrix, TransposeAndExtract) {
  const auto a = random_spd(7, 3);
  EXPECT_EQ(a.asymmetry(), 0.0);
  const auto b = SparseMatrix::from_triplets(2, 3, {{0, 2, 5.0}, {1, 0, 7.0}});
  const auto bt = b.transpose();
  EXPECT_EQ(bt.rows(), 3u);
  EXPECT_DOUBLE_EQ(bt.coeff(2, 0), 5.0);
  EXPECT_DOUBLE_EQ(bt.coeff(0, 1), 7.0);

  const std::vector<std::size_t> rows{4, 1};
  const std::vector<std::size_t> cols{1, 4, 6};
  const auto e = a.extract(rows, cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < cols.size(); ++j) EXPECT_EQ(e.coeff(i, j), a.coeff(rows[i], cols[j]));
  }
}

TEST(SparseMatrix, IdentityDiagonalScaled) {
  const auto i3 = SparseMatrix::identity(3);
  EXPECT_EQ(i3.coeff(1, 1), 1.0);
  EXPECT_EQ(i3.nonzeros(), 3u);
  const Vector d{1.0, 2.0};
  const auto dm = SparseMatrix::diagonal(d).scaled(3.0);
  EXPECT_EQ(dm.coeff(1, 1), 6.0);
}

TEST(VectorOps, DotNormAxpy) {
  Vector y{1.0, 2.0};
  axpy(2.0, Vector{1.0, -1.0}, y);
  EXPECT_EQ(y, (Vector{3.0, 0.0}));
  EXPECT_DOUBLE_EQ(norm2(Vector{3.0, 4.0}), 5.0);
  EXPECT_DOUBLE_EQ(dot(Vector{1.0, 2.0}, Vector{3.0, 4.0}), 11.0);
  EXPECT_DOUBLE_EQ(m_norm(SparseMatrix::diagonal(Vector{4.0, 9.0}), Vector{1.0, 1.0}), std::sqrt(13.0));
}

TEST(ConjugateGradient, SolvesSpdSystem) {
  const auto a = random_spd(50, 11);
  Vector b(50);
  for (std::size_t i = 0; i < b.size(); ++i) b[i] = std::sin(static_cast<double>(i));
  const auto res = cg_solve(a, b, 1e-12, 500);
  const Eigen::VectorXd ref = oracle::dense(a).llt().solve(oracle::vec(b));
  EXPECT_LT((oracle::vec(res.x) - ref).norm() / ref.norm(), 1e-10);
  EXPECT_LE(res.relative_residual, 1e-12);
}

TEST(ConjugateGradient, ZeroRightHandSideNeedsNoIteration) {
  const auto a = random_spd(5, 1);
  const auto res = cg_solve(a, Vector(5, 0.0), 1e-12, 10);
  EXPECT_EQ(res.iterations, 0);
  EXPECT_EQ(res.x, Vector(5, 0.0));
}

TEST(ConjugateGradient, IndefiniteOperatorThrows) {
  const auto a = SparseMatrix::diagonal(Vector{1.0, -1.0});
  EXPECT_THROW(cg_solve(a, Vector{0.0, 1.0}, 1e-12, 10), NotPositiveDefinite);
}

TEST(ConjugateGradient, IterationCapThrowsNonConvergence) {
  const auto a = random_spd(60, 5);
  try {
    cg_solve(a, Vector(60, 1.0), 1e-14, 2);
    FAIL() << "expected NonConvergence";
  } catch (const NonConvergence& e) {
    EXPECT_EQ(e.iterations(), 2);
    EXPECT_GT(e.residual(), 1e-14);
  }
}

TEST(Factorization, MatchesDenseSolve) {
  const auto a = random_spd(40, 7);
  const Factorization f(a);
  Vector b(40, 1.0);
  const Vector x = f.solve(b);
  const Eigen::VectorXd ref = oracle::dense(a).llt().solve(oracle::vec(b));
  EXPECT_LT((oracle::vec(x) - ref).norm() / ref.norm(), 1e-13);
  EXPECT_THROW(f.solve(Vector(3, 1.0)), DimensionMismatch);
}

TEST(Factorization, RejectsIndefiniteMatrix) {
  EXPECT_THROW(Factorization(SparseMatrix::diagonal(Vector{1.0, -2.0})), NotPositiveDefinite);
}
