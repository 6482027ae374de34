#include "ehd/sparse.hpp"

#include <Eigen/OrderingMethods>
#include <Eigen/SparseCore>
#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>
#include <numeric>

#include "ehd/simd/kernels.hpp"

namespace ehd {

SparseMatrix SparseMatrix::from_triplets(int n_rows, int n_cols,
                                         std::span<const Triplet> triplets) {
  if (n_rows < 0 || n_cols < 0) throw std::invalid_argument("from_triplets: negative shape");
  SparseMatrix m;
  m.n_rows_ = n_rows;
  m.n_cols_ = n_cols;

  std::vector<int> count(static_cast<std::size_t>(n_rows) + 1, 0);
  for (const auto& t : triplets) {
    if (t.row < 0 || t.row >= n_rows || t.col < 0 || t.col >= n_cols) {
      throw std::out_of_range("from_triplets: entry (" + std::to_string(t.row) + ", " +
                              std::to_string(t.col) + ") outside " + std::to_string(n_rows) +
                              "x" + std::to_string(n_cols));
    }
    ++count[t.row + 1];
  }
  std::partial_sum(count.begin(), count.end(), count.begin());

  // Bucket by row (stable, so equal-coordinate entries sum in input order).
  std::vector<int> cols(triplets.size());
  std::vector<double> vals(triplets.size());
  std::vector<int> next(count.begin(), count.end() - 1);
  for (const auto& t : triplets) {
    const int pos = next[t.row]++;
    cols[pos] = t.col;
    vals[pos] = t.value;
  }

  m.row_ptr_.assign(static_cast<std::size_t>(n_rows) + 1, 0);
  m.col_idx_.reserve(triplets.size());
  m.values_.reserve(triplets.size());
  std::vector<int> order;
  for (int r = 0; r < n_rows; ++r) {
    const int begin = count[r];
    const int end = count[r + 1];
    order.resize(end - begin);
    std::iota(order.begin(), order.end(), begin);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return cols[a] < cols[b]; });
    for (std::size_t k = 0; k < order.size(); ++k) {
      const int c = cols[order[k]];
      if (k > 0 && m.col_idx_.back() == c && static_cast<int>(m.col_idx_.size()) > m.row_ptr_[r]) {
        m.values_.back() += vals[order[k]];
      } else {
        m.col_idx_.push_back(c);
        m.values_.push_back(vals[order[k]]);
      }
    }
    m.row_ptr_[r + 1] = static_cast<int>(m.col_idx_.size());
  }
  return m;
}

SparseMatrix SparseMatrix::identity(int n) {
  std::vector<Triplet> t(n);
  for (int i = 0; i < n; ++i) t[i] = {i, i, 1.0};
  return from_triplets(n, n, t);
}

double SparseMatrix::at(int i, int j) const {
  const auto begin = col_idx_.begin() + row_ptr_.at(i);
  const auto end = col_idx_.begin() + row_ptr_.at(i + 1);
  const auto it = std::lower_bound(begin, end, j);
  return (it != end && *it == j) ? values_[it - col_idx_.begin()] : 0.0;
}

std::vector<double> SparseMatrix::multiply(std::span<const double> x) const {
  std::vector<double> y(n_rows_);
  multiply(x, y);
  return y;
}

void SparseMatrix::multiply(std::span<const double> x, std::span<double> y) const {
  if (static_cast<int>(x.size()) != n_cols_ || static_cast<int>(y.size()) != n_rows_) {
    throw std::invalid_argument("SparseMatrix::multiply: shape mismatch");
  }
  simd::spmv({row_ptr_, col_idx_, values_}, x, y);
}

SparseMatrix SparseMatrix::transpose() const {
  std::vector<Triplet> t;
  t.reserve(values_.size());
  for (int r = 0; r < n_rows_; ++r) {
    for (int k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) t.push_back({col_idx_[k], r, values_[k]});
  }
  return from_triplets(n_cols_, n_rows_, t);
}

SparseMatrix SparseMatrix::scaled(double alpha) const {
  SparseMatrix m = *this;
  for (double& v : m.values_) v *= alpha;
  return m;
}

void SparseMatrix::append_to(std::vector<Triplet>& out, int row_offset, int col_offset,
                             double alpha) const {
  for (int r = 0; r < n_rows_; ++r) {
    for (int k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) {
      out.push_back({r + row_offset, col_idx_[k] + col_offset, alpha * values_[k]});
    }
  }
}

void SparseMatrix::replace_row_with_identity(int i) {
  const int rows[1] = {i};
  replace_rows_with_identity(rows);
}

void SparseMatrix::replace_rows_with_identity(std::span<const int> rows) {
  bool missing_diagonal = false;
  for (int i : rows) {
    if (i < 0 || i >= n_rows_ || i >= n_cols_) {
      throw std::out_of_range("replace_rows_with_identity: row " + std::to_string(i));
    }
    bool found = false;
    for (int k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) {
      values_[k] = 0.0;
      if (col_idx_[k] == i) found = true;
    }
    missing_diagonal |= !found;
  }
  if (missing_diagonal) {
    std::vector<Triplet> t;
    append_to(t, 0, 0);
    for (int i : rows) t.push_back({i, i, 0.0});
    *this = from_triplets(n_rows_, n_cols_, t);
  }
  for (int i : rows) {
    for (int k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) {
      if (col_idx_[k] == i) values_[k] = 1.0;
    }
  }
}

SparseMatrix add(const SparseMatrix& a, double alpha, const SparseMatrix& b, double beta) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("add: shape mismatch");
  }
  std::vector<Triplet> t;
  t.reserve(a.nnz() + b.nnz());
  a.append_to(t, 0, 0, alpha);
  b.append_to(t, 0, 0, beta);
  return SparseMatrix::from_triplets(a.rows(), a.cols(), t);
}

double norm2(std::span<const double> x) { return std::sqrt(simd::dot(x, x)); }

namespace {

void check_structure(const SparseMatrix& a) {
  const int n = a.rows();
  std::vector<char> col_seen(n, 0);
  for (int r = 0; r < n; ++r) {
    bool row_nonzero = false;
    for (int k = a.row_ptr()[r]; k < a.row_ptr()[r + 1]; ++k) {
      if (a.values()[k] != 0.0) {
        row_nonzero = true;
        col_seen[a.col_idx()[k]] = 1;
      }
    }
    if (!row_nonzero) {
      throw SingularMatrixError("solve_direct: matrix is singular, row " + std::to_string(r) +
                                    " is identically zero",
                                r);
    }
  }
  for (int c = 0; c < n; ++c) {
    if (!col_seen[c]) {
      throw SingularMatrixError("solve_direct: matrix is singular, column " + std::to_string(c) +
                                    " is identically zero",
                                c);
    }
  }
}

}  // namespace

LinearSolution solve_direct(const SparseMatrix& a, std::span<const double> b) {
  if (a.rows() != a.cols()) throw std::invalid_argument("solve_direct: matrix is not square");
  if (static_cast<int>(b.size()) != a.rows()) {
    throw std::invalid_argument("solve_direct: rhs length " + std::to_string(b.size()) +
                                " does not match " + std::to_string(a.rows()));
  }
  const int n = a.rows();
  LinearSolution out;
  if (n == 0) return out;
  check_structure(a);

  std::vector<Eigen::Triplet<double>> t;
  t.reserve(a.nnz());
  for (int r = 0; r < n; ++r) {
    for (int k = a.row_ptr()[r]; k < a.row_ptr()[r + 1]; ++k) {
      t.emplace_back(r, a.col_idx()[k], a.values()[k]);
    }
  }
  Eigen::SparseMatrix<double, Eigen::ColMajor, int> m(n, n);
  m.setFromTriplets(t.begin(), t.end());
  m.makeCompressed();

  Eigen::SparseLU<Eigen::SparseMatrix<double, Eigen::ColMajor, int>, Eigen::COLAMDOrdering<int>>
      lu;
  lu.analyzePattern(m);
  lu.factorize(m);
  if (lu.info() != Eigen::Success) {
    // SparseLU reports the failing column in its message; surface it verbatim.
    throw SingularMatrixError("solve_direct: factorization failed: " + lu.lastErrorMessage(), -1);
  }
  const Eigen::Map<const Eigen::VectorXd> rhs(b.data(), n);
  Eigen::VectorXd x = lu.solve(rhs);
  if (lu.info() != Eigen::Success || !x.allFinite()) {
    throw SingularMatrixError("solve_direct: triangular solve failed", -1);
  }
  out.x.assign(x.data(), x.data() + n);
  out.factor_nonzeros = static_cast<long>(lu.nnzL() + lu.nnzU());

  std::vector<double> r = a.multiply(out.x);
  for (int i = 0; i < n; ++i) r[i] -= b[i];
  out.residual_norm = norm2(r);
  return out;
}

}  // namespace ehd
