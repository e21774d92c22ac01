#pragma once

// Data-parallel permutation kernels on raw image arrays.
//
// Every kernel has a scalar reference implementation; wider variants are
// picked once at startup from the CPU features (MF_SIMD=scalar forces the
// reference path). All variants must agree bit-for-bit.

#include <cstddef>
#include <cstdint>

namespace mf::simd {

using Point = std::uint32_t;

struct KernelTable {
  const char* name;
  // out[i] = b[a[i]]  (apply a, then b)
  void (*compose)(const Point* a, const Point* b, Point* out, std::size_t n);
  // out[i] = h[x[hinv[i]]]  (h^-1 x h)
  void (*conjugate)(const Point* x, const Point* h, const Point* hinv, Point* out,
                    std::size_t n);
  // Lexicographic three-way compare: -1, 0, 1.
  int (*compare)(const Point* a, const Point* b, std::size_t n);
  // compare(h^-1 x h, ref) without materializing the conjugate.
  int (*conjugate_compare)(const Point* x, const Point* h, const Point* hinv,
                           const Point* ref, std::size_t n);
  bool (*is_identity)(const Point* a, std::size_t n);
};

const KernelTable& scalar_kernels() noexcept;
// nullptr when the variant is not compiled in or the CPU lacks the feature.
const KernelTable* avx2_kernels() noexcept;
// The table selected for this process.
const KernelTable& kernels() noexcept;

}  // namespace mf::simd
