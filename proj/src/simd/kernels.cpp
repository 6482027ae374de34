#include "ehd/simd/kernels.hpp"

#include <atomic>
#include <stdexcept>
#include <string>

namespace ehd::simd {

namespace {

void require_same_size(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw std::invalid_argument(std::string(what) + ": length mismatch (" + std::to_string(a) +
                                " vs " + std::to_string(b) + ")");
  }
}

std::atomic<Isa>& dispatched() {
  static std::atomic<Isa> isa{detect_isa()};
  return isa;
}

const KernelTable& table() { return kernels_for(dispatched().load(std::memory_order_relaxed)); }

}  // namespace

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
    case Isa::Neon: return "neon";
  }
  return "unknown";
}

bool isa_available(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return true;
    case Isa::Avx2:
#if defined(__x86_64__) || defined(_M_X64)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Isa::Neon:
#if defined(__aarch64__)
      return true;
#else
      return false;
#endif
  }
  return false;
}

Isa detect_isa() {
  if (isa_available(Isa::Avx2)) return Isa::Avx2;
  if (isa_available(Isa::Neon)) return Isa::Neon;
  return Isa::Scalar;
}

Isa active_isa() { return dispatched().load(std::memory_order_relaxed); }

void force_isa(Isa isa) {
  if (!isa_available(isa)) {
    throw std::invalid_argument("force_isa: " + std::string(isa_name(isa)) +
                                " is not available on this machine");
  }
  dispatched().store(isa, std::memory_order_relaxed);
}

const KernelTable& kernels_for(Isa isa) {
  switch (isa) {
#if defined(__x86_64__) || defined(_M_X64)
    case Isa::Avx2:
      if (isa_available(Isa::Avx2)) return avx2_kernels();
      break;
#endif
#if defined(__aarch64__)
    case Isa::Neon: return neon_kernels();
#endif
    default: break;
  }
  return scalar_kernels();
}

void axpby(double a, std::span<const double> x, double b, std::span<const double> y,
           std::span<double> out) {
  require_same_size(x.size(), y.size(), "axpby");
  require_same_size(x.size(), out.size(), "axpby");
  table().axpby(a, x.data(), b, y.data(), out.data(), x.size());
}

void time_filter(std::span<const double> tilde, std::span<const double> cur,
                 std::span<const double> prev, std::span<double> out) {
  require_same_size(tilde.size(), cur.size(), "time_filter");
  require_same_size(tilde.size(), prev.size(), "time_filter");
  require_same_size(tilde.size(), out.size(), "time_filter");
  table().time_filter(tilde.data(), cur.data(), prev.data(), out.data(), tilde.size());
}

double dot(std::span<const double> x, std::span<const double> y) {
  require_same_size(x.size(), y.size(), "dot");
  return table().dot(x.data(), y.data(), x.size());
}

void spmv(const CsrView& a, std::span<const double> x, std::span<double> y) {
  if (a.row_ptr.empty()) throw std::invalid_argument("spmv: empty row pointer");
  require_same_size(a.row_ptr.size() - 1, y.size(), "spmv");
  table().spmv(a.row_ptr.data(), a.col_idx.data(), a.values.data(), x.data(), y.data(), y.size());
}

}  // namespace ehd::simd
