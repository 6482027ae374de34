#include <immintrin.h>

#include "ehd/simd/kernels.hpp"

namespace ehd::simd {

namespace {

void axpby_avx2(double a, const double* x, double b, const double* y, double* out,
                std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  const __m256d vb = _mm256_set1_pd(b);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d ax = _mm256_mul_pd(va, _mm256_loadu_pd(x + i));
    const __m256d by = _mm256_mul_pd(vb, _mm256_loadu_pd(y + i));
    _mm256_storeu_pd(out + i, _mm256_add_pd(ax, by));
  }
  for (; i < n; ++i) out[i] = a * x[i] + b * y[i];
}

void time_filter_avx2(const double* tilde, const double* cur, const double* prev, double* out,
                      std::size_t n) {
  const __m256d two = _mm256_set1_pd(2.0);
  const __m256d three = _mm256_set1_pd(3.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d t = _mm256_loadu_pd(tilde + i);
    const __m256d c = _mm256_loadu_pd(cur + i);
    const __m256d p = _mm256_loadu_pd(prev + i);
    const __m256d d = _mm256_add_pd(_mm256_sub_pd(t, _mm256_mul_pd(two, c)), p);
    _mm256_storeu_pd(out + i, _mm256_sub_pd(t, _mm256_div_pd(d, three)));
  }
  for (; i < n; ++i) {
    const double d = (tilde[i] - 2.0 * cur[i]) + prev[i];
    out[i] = tilde[i] - d / 3.0;
  }
}

double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

double dot_avx2(const double* x, const double* y, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_add_pd(acc0, _mm256_mul_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
    acc1 = _mm256_add_pd(acc1,
                         _mm256_mul_pd(_mm256_loadu_pd(x + i + 4), _mm256_loadu_pd(y + i + 4)));
  }
  for (; i + 4 <= n; i += 4) {
    acc0 = _mm256_add_pd(acc0, _mm256_mul_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
  }
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) s += x[i] * y[i];
  return s;
}

void spmv_avx2(const int* row_ptr, const int* col_idx, const double* values, const double* x,
               double* y, std::size_t n_rows) {
  for (std::size_t r = 0; r < n_rows; ++r) {
    int k = row_ptr[r];
    const int end = row_ptr[r + 1];
    __m256d acc = _mm256_setzero_pd();
    for (; k + 4 <= end; k += 4) {
      const __m128i idx = _mm_loadu_si128(reinterpret_cast<const __m128i*>(col_idx + k));
      const __m256d xv = _mm256_i32gather_pd(x, idx, 8);
      acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(values + k), xv));
    }
    double s = hsum(acc);
    for (; k < end; ++k) s += values[k] * x[col_idx[k]];
    y[r] = s;
  }
}

}  // namespace

const KernelTable& avx2_kernels() {
  static const KernelTable table{axpby_avx2, time_filter_avx2, dot_avx2, spmv_avx2};
  return table;
}

}  // namespace ehd::simd
