#include <cstdlib>
#include <string_view>

#include "aspectflow/simd/kernels.hpp"

namespace aspectflow::simd {

bool cpu_has_avx2() noexcept {
#if defined(__x86_64__) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

namespace {

Isa select_isa() noexcept {
  if (const char* forced = std::getenv("ASPECTFLOW_SIMD"); forced && std::string_view(forced) == "scalar")
    return Isa::Scalar;
  if (avx2::table() != nullptr && cpu_has_avx2()) return Isa::Avx2;
  return Isa::Scalar;
}

}  // namespace

Isa active_isa() noexcept {
  static const Isa isa = select_isa();
  return isa;
}

std::string_view isa_name(Isa isa) noexcept { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

const KernelTable& active() noexcept {
  static const KernelTable& table = active_isa() == Isa::Avx2 ? *avx2::table() : scalar::table();
  return table;
}

}  // namespace aspectflow::simd
