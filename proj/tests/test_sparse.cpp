#include <gtest/gtest.h>

#include <random>

#include "ehd/sparse.hpp"
#include "oracles.hpp"
#include "random_systems.hpp"

using namespace ehd;

TEST(SparseMatrix, FromTripletsSumsDuplicatesAndSortsColumns) {
  const std::vector<Triplet> t{{0, 2, 1.0}, {0, 0, 2.0}, {1, 1, 3.0}, {0, 2, 4.0}, {2, 0, -1.0}};
  const auto a = SparseMatrix::from_triplets(3, 3, t);
  EXPECT_EQ(a.nnz(), 4);
  EXPECT_EQ(a.at(0, 2), 5.0);
  EXPECT_EQ(a.at(0, 0), 2.0);
  EXPECT_EQ(a.at(1, 0), 0.0);
  EXPECT_EQ(a.col_idx()[0], 0);
  EXPECT_EQ(a.col_idx()[1], 2);
}

TEST(SparseMatrix, OutOfRangeTripletThrows) {
  const std::vector<Triplet> t{{0, 3, 1.0}};
  EXPECT_THROW(SparseMatrix::from_triplets(3, 3, t), std::out_of_range);
}

TEST(SparseMatrix, MultiplyTransposeAddAgreeWithDense) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> v(-1, 1);
  const int r = 9, c = 7;
  std::vector<Triplet> t;
  oracle::Dense d(r, std::vector<double>(c, 0.0));
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < c; ++j) {
      if ((i + 2 * j) % 3 == 0) {
        const double x = v(rng);
        t.push_back({i, j, x});
        d[i][j] = x;
      }
    }
  }
  const auto a = SparseMatrix::from_triplets(r, c, t);
  std::vector<double> x(c);
  for (double& e : x) e = v(rng);
  const auto y = a.multiply(x);
  for (int i = 0; i < r; ++i) {
    double s = 0.0;
    for (int j = 0; j < c; ++j) s += d[i][j] * x[j];
    EXPECT_NEAR(y[i], s, 1e-15);
  }
  const auto at = a.transpose();
  EXPECT_EQ(at.rows(), c);
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < c; ++j) EXPECT_EQ(at.at(j, i), d[i][j]);
  }
  const auto s = add(a, 2.0, a.scaled(-1.0), 3.0);  // 2A - 3A = -A
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < c; ++j) EXPECT_NEAR(s.at(i, j), -d[i][j], 1e-15);
  }
}

TEST(SparseMatrix, AddShapeMismatchThrows) {
  EXPECT_THROW(add(SparseMatrix::identity(2), 1.0, SparseMatrix::identity(3), 1.0),
               std::invalid_argument);
}

TEST(SparseMatrix, ReplaceRowWithIdentityInsertsMissingDiagonal) {
  const std::vector<Triplet> t{{0, 0, 2.0}, {1, 0, 1.0}, {1, 2, 1.0}, {2, 2, 3.0}};
  auto a = SparseMatrix::from_triplets(3, 3, t);
  a.replace_row_with_identity(1);
  EXPECT_EQ(a.at(1, 0), 0.0);
  EXPECT_EQ(a.at(1, 1), 1.0);
  EXPECT_EQ(a.at(1, 2), 0.0);
  EXPECT_EQ(a.at(0, 0), 2.0);
  EXPECT_EQ(a.at(2, 2), 3.0);
}

TEST(SparseMatrix, AppendToShiftsAndScales) {
  const auto a = SparseMatrix::identity(2);
  std::vector<Triplet> t;
  a.append_to(t, 1, 2, 5.0);
  const auto b = SparseMatrix::from_triplets(3, 4, t);
  EXPECT_EQ(b.at(1, 2), 5.0);
  EXPECT_EQ(b.at(2, 3), 5.0);
  EXPECT_EQ(b.nnz(), 2);
}

TEST(SolveDirect, MatchesDenseEliminationOnConstrainedRandomSystems) {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> size(2, 200);
  for (int trial = 0; trial < 50; ++trial) {
    const auto sys = oracle::constrained_system(rng, size(rng));
    const auto a = SparseMatrix::from_triplets(sys.n, sys.n, sys.triplets);
    const auto sol = solve_direct(a, sys.rhs);
    const auto ref = oracle::dense_solve(sys.dense, sys.rhs);
    double diff = 0.0;
    for (int i = 0; i < sys.n; ++i) diff = std::max(diff, std::abs(sol.x[i] - ref[i]));
    double scale = 0.0;
    for (double v : ref) scale = std::max(scale, std::abs(v));
    EXPECT_LE(diff, 1e-10 * scale) << "trial " << trial << " n=" << sys.n;
    EXPECT_LT(sol.residual_norm, 1e-10);
  }
}

TEST(SolveDirect, ZeroRowIsReportedByIndex) {
  const std::vector<Triplet> t{{0, 0, 1.0}, {0, 1, 1.0}, {2, 1, 1.0}, {2, 2, 1.0}, {1, 1, 0.0}};
  const auto a = SparseMatrix::from_triplets(3, 3, t);
  try {
    solve_direct(a, std::vector<double>{1, 2, 3});
    FAIL() << "expected SingularMatrixError";
  } catch (const SingularMatrixError& e) {
    EXPECT_EQ(e.index(), 1);
    EXPECT_NE(std::string(e.what()).find("row"), std::string::npos);
  }
}

TEST(SolveDirect, ZeroColumnIsReportedByIndex) {
  const std::vector<Triplet> t{{0, 0, 1.0}, {1, 0, 1.0}, {1, 1, 1.0}, {2, 1, 1.0}};
  const auto a = SparseMatrix::from_triplets(3, 3, t);
  try {
    solve_direct(a, std::vector<double>{1, 2, 3});
    FAIL() << "expected SingularMatrixError";
  } catch (const SingularMatrixError& e) {
    EXPECT_EQ(e.index(), 2);
    EXPECT_NE(std::string(e.what()).find("column"), std::string::npos);
  }
}

TEST(SolveDirect, NumericallySingularThrows) {
  const std::vector<Triplet> t{{0, 0, 1.0}, {0, 1, 2.0}, {1, 0, 2.0}, {1, 1, 4.0}};
  const auto a = SparseMatrix::from_triplets(2, 2, t);
  EXPECT_THROW(solve_direct(a, std::vector<double>{1, 2}), SingularMatrixError);
}

TEST(SolveDirect, ShapeErrors) {
  EXPECT_THROW(solve_direct(SparseMatrix::identity(3), std::vector<double>(2)), std::invalid_argument);
  const std::vector<Triplet> t{{0, 0, 1.0}};
  EXPECT_THROW(solve_direct(SparseMatrix::from_triplets(1, 2, t), std::vector<double>(1)),
               std::invalid_argument);
}
