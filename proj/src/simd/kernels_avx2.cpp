// AVX2 variants. This translation unit is compiled with -mavx2 and only
// entered after a runtime CPU check.
#include "mf/simd/kernels.hpp"

#if defined(__x86_64__) && defined(__AVX2__)
#include <immintrin.h>

namespace mf::simd {
namespace {

inline __m256i load8(const Point* p) {
  return _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p));
}

inline __m256i gather8(const Point* base, __m256i idx) {
  return _mm256_i32gather_epi32(reinterpret_cast<const int*>(base), idx, 4);
}

// Index of the first differing lane in [0, 8), or 8 when all equal.
inline unsigned first_mismatch(__m256i a, __m256i b) {
  const unsigned eq =
      static_cast<unsigned>(_mm256_movemask_ps(_mm256_castsi256_ps(_mm256_cmpeq_epi32(a, b))));
  const unsigned ne = ~eq & 0xffu;
  return ne == 0 ? 8u : static_cast<unsigned>(__builtin_ctz(ne));
}

void compose_avx2(const Point* a, const Point* b, Point* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + i), gather8(b, load8(a + i)));
  }
  for (; i < n; ++i) out[i] = b[a[i]];
}

void conjugate_avx2(const Point* x, const Point* h, const Point* hinv, Point* out,
                    std::size_t n) {
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256i v = gather8(h, gather8(x, load8(hinv + i)));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + i), v);
  }
  for (; i < n; ++i) out[i] = h[x[hinv[i]]];
}

int compare_avx2(const Point* a, const Point* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const unsigned k = first_mismatch(load8(a + i), load8(b + i));
    if (k != 8) return a[i + k] < b[i + k] ? -1 : 1;
  }
  for (; i < n; ++i) {
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  }
  return 0;
}

int conjugate_compare_avx2(const Point* x, const Point* h, const Point* hinv,
                           const Point* ref, std::size_t n) {
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256i v = gather8(h, gather8(x, load8(hinv + i)));
    const unsigned k = first_mismatch(v, load8(ref + i));
    if (k != 8) {
      alignas(32) Point lanes[8];
      _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), v);
      return lanes[k] < ref[i + k] ? -1 : 1;
    }
  }
  for (; i < n; ++i) {
    const Point v = h[x[hinv[i]]];
    if (v != ref[i]) return v < ref[i] ? -1 : 1;
  }
  return 0;
}

bool is_identity_avx2(const Point* a, std::size_t n) {
  std::size_t i = 0;
  __m256i iota = _mm256_setr_epi32(0, 1, 2, 3, 4, 5, 6, 7);
  const __m256i step = _mm256_set1_epi32(8);
  for (; i + 8 <= n; i += 8) {
    if (first_mismatch(load8(a + i), iota) != 8) return false;
    iota = _mm256_add_epi32(iota, step);
  }
  for (; i < n; ++i) {
    if (a[i] != i) return false;
  }
  return true;
}

constexpr KernelTable kAvx2{"avx2",        compose_avx2,           conjugate_avx2,
                            compare_avx2,  conjugate_compare_avx2, is_identity_avx2};

}  // namespace

const KernelTable* avx2_kernels_unchecked() noexcept { return &kAvx2; }

}  // namespace mf::simd

#else

namespace mf::simd {
const KernelTable* avx2_kernels_unchecked() noexcept { return nullptr; }
}  // namespace mf::simd

#endif
