#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ehd {

struct Triplet {
  int row = 0;
  int col = 0;
  double value = 0.0;
};

/// Compressed sparse row matrix. Column indices are strictly increasing
/// within each row; duplicate triplets are summed at construction.
class SparseMatrix {
 public:
  SparseMatrix() = default;

  static SparseMatrix from_triplets(int n_rows, int n_cols, std::span<const Triplet> triplets);
  static SparseMatrix identity(int n);

  int rows() const { return n_rows_; }
  int cols() const { return n_cols_; }
  int nnz() const { return static_cast<int>(values_.size()); }

  std::span<const int> row_ptr() const { return row_ptr_; }
  std::span<const int> col_idx() const { return col_idx_; }
  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }

  /// Stored value at (i, j), or 0 if not in the pattern.
  double at(int i, int j) const;

  std::vector<double> multiply(std::span<const double> x) const;
  void multiply(std::span<const double> x, std::span<double> y) const;

  SparseMatrix transpose() const;
  SparseMatrix scaled(double alpha) const;

  /// Appends alpha * this, shifted by (row_offset, col_offset), to a triplet list.
  void append_to(std::vector<Triplet>& out, int row_offset, int col_offset,
                 double alpha = 1.0) const;

  /// Replaces row i by the unit row e_i (inserting the diagonal if absent).
  void replace_row_with_identity(int i);
  void replace_rows_with_identity(std::span<const int> rows);

 private:
  int n_rows_ = 0;
  int n_cols_ = 0;
  std::vector<int> row_ptr_{0};
  std::vector<int> col_idx_;
  std::vector<double> values_;
};

/// alpha*A + beta*B for matrices of equal shape.
SparseMatrix add(const SparseMatrix& a, double alpha, const SparseMatrix& b, double beta);

struct LinearSolution {
  std::vector<double> x;
  /// ||Ax - b||_2, recomputed from the original matrix after the solve.
  double residual_norm = 0.0;
  /// Nonzeros in the L and U factors.
  long factor_nonzeros = 0;
};

class SingularMatrixError : public std::runtime_error {
 public:
  SingularMatrixError(const std::string& what, int index)
      : std::runtime_error(what), index_(index) {}
  /// Offending row / column / pivot index, or -1 if unknown.
  int index() const { return index_; }

 private:
  int index_;
};

/// Sparse LU with partial pivoting and COLAMD fill-reducing ordering.
/// Throws SingularMatrixError on structural or numerical singularity.
LinearSolution solve_direct(const SparseMatrix& a, std::span<const double> b);

double norm2(std::span<const double> x);

}  // namespace ehd
