#include "mf/simd/kernels.hpp"

namespace mf::simd {
namespace {

void compose_scalar(const Point* a, const Point* b, Point* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = b[a[i]];
}

void conjugate_scalar(const Point* x, const Point* h, const Point* hinv, Point* out,
                      std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = h[x[hinv[i]]];
}

int compare_scalar(const Point* a, const Point* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  }
  return 0;
}

int conjugate_compare_scalar(const Point* x, const Point* h, const Point* hinv,
                             const Point* ref, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const Point v = h[x[hinv[i]]];
    if (v != ref[i]) return v < ref[i] ? -1 : 1;
  }
  return 0;
}

bool is_identity_scalar(const Point* a, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] != i) return false;
  }
  return true;
}

constexpr KernelTable kScalar{"scalar",          compose_scalar,   conjugate_scalar,
                              compare_scalar,    conjugate_compare_scalar,
                              is_identity_scalar};

}  // namespace

const KernelTable& scalar_kernels() noexcept { return kScalar; }

}  // namespace mf::simd
