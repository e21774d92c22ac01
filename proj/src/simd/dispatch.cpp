#include <cstdlib>
#include <string_view>

#include "mf/simd/kernels.hpp"

namespace mf::simd {

const KernelTable* avx2_kernels_unchecked() noexcept;

const KernelTable* avx2_kernels() noexcept {
#if defined(__x86_64__)
  static const bool supported = __builtin_cpu_supports("avx2");
  return supported ? avx2_kernels_unchecked() : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& kernels() noexcept {
  static const KernelTable& selected = [] () -> const KernelTable& {
    const char* forced = std::getenv("MF_SIMD");
    if (forced != nullptr && std::string_view(forced) == "scalar") return scalar_kernels();
    if (const KernelTable* t = avx2_kernels()) return *t;
    return scalar_kernels();
  }();
  return selected;
}

}  // namespace mf::simd
