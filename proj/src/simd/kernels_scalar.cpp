#include "ehd/simd/kernels.hpp"

namespace ehd::simd {

namespace {

void axpby_scalar(double a, const double* x, double b, const double* y, double* out,
                  std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a * x[i] + b * y[i];
}

void time_filter_scalar(const double* tilde, const double* cur, const double* prev, double* out,
                        std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double d = (tilde[i] - 2.0 * cur[i]) + prev[i];
    out[i] = tilde[i] - d / 3.0;
  }
}

double dot_scalar(const double* x, const double* y, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i] * y[i];
  return s;
}

void spmv_scalar(const int* row_ptr, const int* col_idx, const double* values, const double* x,
                 double* y, std::size_t n_rows) {
  for (std::size_t r = 0; r < n_rows; ++r) {
    double s = 0.0;
    for (int k = row_ptr[r]; k < row_ptr[r + 1]; ++k) s += values[k] * x[col_idx[k]];
    y[r] = s;
  }
}

}  // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable table{axpby_scalar, time_filter_scalar, dot_scalar, spmv_scalar};
  return table;
}

}  // namespace ehd::simd
