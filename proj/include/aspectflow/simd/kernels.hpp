#pragma once

// Dense double-precision vector kernels used by the numeric hot loops
// (logistic-regression updates and PageRank iteration).
//
// Each kernel has a scalar reference implementation and, on x86-64, an
// AVX2+FMA implementation. The active variant is picked once at first use
// from CPUID; set ASPECTFLOW_SIMD=scalar in the environment to force the
// reference path. Results of the two paths agree to rounding, not bitwise:
// the vector path reassociates sums and fuses multiply-adds.

#include <cstddef>
#include <span>
#include <string_view>

namespace aspectflow::simd {

enum class Isa { Scalar, Avx2 };

struct KernelTable {
  double (*dot)(const double* a, const double* b, std::size_t n);
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  void (*scale)(double alpha, double* x, std::size_t n);
  double (*sum)(const double* x, std::size_t n);
  double (*l1_distance)(const double* a, const double* b, std::size_t n);
};

namespace scalar {
const KernelTable& table() noexcept;
}

namespace avx2 {
// Null when the binary was built without AVX2 support compiled in.
const KernelTable* table() noexcept;
}

// True when the running CPU supports AVX2 and FMA.
bool cpu_has_avx2() noexcept;

// Variant selected for this process.
Isa active_isa() noexcept;
std::string_view isa_name(Isa isa) noexcept;
const KernelTable& active() noexcept;

inline double dot(std::span<const double> a, std::span<const double> b) {
  return active().dot(a.data(), b.data(), a.size());
}

// y += alpha * x
inline void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  active().axpy(alpha, x.data(), y.data(), x.size());
}

inline void scale(double alpha, std::span<double> x) {
  active().scale(alpha, x.data(), x.size());
}

inline double sum(std::span<const double> x) { return active().sum(x.data(), x.size()); }

inline double l1_distance(std::span<const double> a, std::span<const double> b) {
  return active().l1_distance(a.data(), b.data(), a.size());
}

}  // namespace aspectflow::simd
