#pragma once

#include <cstddef>
#include <span>
#include <string_view>

namespace ehd::simd {

enum class Isa { Scalar, Avx2, Neon };

std::string_view isa_name(Isa isa);

/// Best instruction set supported by this CPU and build.
Isa detect_isa();
bool isa_available(Isa isa);
/// Currently dispatched instruction set (detect_isa() unless overridden).
Isa active_isa();
/// Overrides dispatch, e.g. to compare variants in tests. Throws
/// std::invalid_argument when the ISA is unavailable.
void force_isa(Isa isa);

/// Read-only view of a CSR matrix for spmv.
struct CsrView {
  std::span<const int> row_ptr;
  std::span<const int> col_idx;
  std::span<const double> values;
};

// Dispatched entry points. Elementwise kernels round identically on every
// ISA; reductions (dot, spmv) may differ in summation order.

/// out = a*x + b*y
void axpby(double a, std::span<const double> x, double b, std::span<const double> y,
           std::span<double> out);
/// out = tilde - (tilde - 2*cur + prev) / 3
void time_filter(std::span<const double> tilde, std::span<const double> cur,
                 std::span<const double> prev, std::span<double> out);
double dot(std::span<const double> x, std::span<const double> y);
/// y = A x
void spmv(const CsrView& a, std::span<const double> x, std::span<double> y);

// Per-ISA implementations, exposed for equivalence testing.
struct KernelTable {
  void (*axpby)(double, const double*, double, const double*, double*, std::size_t);
  void (*time_filter)(const double*, const double*, const double*, double*, std::size_t);
  double (*dot)(const double*, const double*, std::size_t);
  void (*spmv)(const int*, const int*, const double*, const double*, double*, std::size_t);
};

const KernelTable& scalar_kernels();
#if defined(__x86_64__) || defined(_M_X64)
const KernelTable& avx2_kernels();
#endif
#if defined(__aarch64__)
const KernelTable& neon_kernels();
#endif
const KernelTable& kernels_for(Isa isa);

}  // namespace ehd::simd
