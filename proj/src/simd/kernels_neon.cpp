#include <arm_neon.h>

#include "ehd/simd/kernels.hpp"

namespace ehd::simd {

namespace {

void axpby_neon(double a, const double* x, double b, const double* y, double* out,
                std::size_t n) {
  const float64x2_t va = vdupq_n_f64(a);
  const float64x2_t vb = vdupq_n_f64(b);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t ax = vmulq_f64(va, vld1q_f64(x + i));
    const float64x2_t by = vmulq_f64(vb, vld1q_f64(y + i));
    vst1q_f64(out + i, vaddq_f64(ax, by));
  }
  for (; i < n; ++i) out[i] = a * x[i] + b * y[i];
}

void time_filter_neon(const double* tilde, const double* cur, const double* prev, double* out,
                      std::size_t n) {
  const float64x2_t two = vdupq_n_f64(2.0);
  const float64x2_t three = vdupq_n_f64(3.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t t = vld1q_f64(tilde + i);
    const float64x2_t d = vaddq_f64(vsubq_f64(t, vmulq_f64(two, vld1q_f64(cur + i))),
                                    vld1q_f64(prev + i));
    vst1q_f64(out + i, vsubq_f64(t, vdivq_f64(d, three)));
  }
  for (; i < n; ++i) {
    const double d = (tilde[i] - 2.0 * cur[i]) + prev[i];
    out[i] = tilde[i] - d / 3.0;
  }
}

double dot_neon(const double* x, const double* y, std::size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) acc = vaddq_f64(acc, vmulq_f64(vld1q_f64(x + i), vld1q_f64(y + i)));
  double s = vaddvq_f64(acc);
  for (; i < n; ++i) s += x[i] * y[i];
  return s;
}

void spmv_neon(const int* row_ptr, const int* col_idx, const double* values, const double* x,
               double* y, std::size_t n_rows) {
  for (std::size_t r = 0; r < n_rows; ++r) {
    int k = row_ptr[r];
    const int end = row_ptr[r + 1];
    float64x2_t acc = vdupq_n_f64(0.0);
    for (; k + 2 <= end; k += 2) {
      const double xv[2] = {x[col_idx[k]], x[col_idx[k + 1]]};
      acc = vaddq_f64(acc, vmulq_f64(vld1q_f64(values + k), vld1q_f64(xv)));
    }
    double s = vaddvq_f64(acc);
    for (; k < end; ++k) s += values[k] * x[col_idx[k]];
    y[r] = s;
  }
}

}  // namespace

const KernelTable& neon_kernels() {
  static const KernelTable table{axpby_neon, time_filter_neon, dot_neon, spmv_neon};
  return table;
}

}  // namespace ehd::simd
