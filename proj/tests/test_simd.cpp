#include <numeric>
#include <random>

#include "doctest.h"
#include "mf/simd/kernels.hpp"
#include "oracles.hpp"

using namespace mf;

namespace {

void check_equivalent(const simd::KernelTable& ref, const simd::KernelTable& alt) {
  std::mt19937_64 rng(2024);
  for (std::size_t n : {1u, 2u, 7u, 8u, 9u, 15u, 16u, 17u, 31u, 64u, 100u, 257u}) {
    for (int trial = 0; trial < 40; ++trial) {
      const auto a = oracle::random_perm(n, rng);
      const auto b = oracle::random_perm(n, rng);
      const auto h = oracle::random_perm(n, rng);
      const auto hinv = h.inverse();
      std::vector<Point> r1(n), r2(n);

      ref.compose(a.images().data(), b.images().data(), r1.data(), n);
      alt.compose(a.images().data(), b.images().data(), r2.data(), n);
      CHECK(r1 == r2);

      ref.conjugate(a.images().data(), h.images().data(), hinv.images().data(), r1.data(), n);
      alt.conjugate(a.images().data(), h.images().data(), hinv.images().data(), r2.data(), n);
      CHECK(r1 == r2);

      // Compare against a near-copy so mismatches land at every position.
      std::vector<Point> c(a.images().begin(), a.images().end());
      if (n > 1 && trial % 2 == 0) std::swap(c[trial % n], c[(trial + 1) % n]);
      CHECK(ref.compare(a.images().data(), c.data(), n) ==
            alt.compare(a.images().data(), c.data(), n));
      CHECK(ref.compare(c.data(), a.images().data(), n) ==
            alt.compare(c.data(), a.images().data(), n));
      CHECK(ref.compare(a.images().data(), b.images().data(), n) ==
            alt.compare(a.images().data(), b.images().data(), n));

      ref.conjugate(a.images().data(), h.images().data(), hinv.images().data(), r1.data(), n);
      if (n > 1 && trial % 3 == 0) std::swap(r1[(3 * trial) % n], r1[(3 * trial + 1) % n]);
      CHECK(ref.conjugate_compare(a.images().data(), h.images().data(), hinv.images().data(),
                                  r1.data(), n) ==
            alt.conjugate_compare(a.images().data(), h.images().data(), hinv.images().data(),
                                  r1.data(), n));

      CHECK(ref.is_identity(a.images().data(), n) == alt.is_identity(a.images().data(), n));
      std::vector<Point> id(n);
      std::iota(id.begin(), id.end(), Point{0});
      CHECK(alt.is_identity(id.data(), n));
      id[n - 1] = id[0];
      if (n > 1) CHECK_FALSE(alt.is_identity(id.data(), n));
    }
  }
}

}  // namespace

TEST_CASE("scalar reference kernels behave as specified") {
  const auto& k = simd::scalar_kernels();
  const Point a[3] = {1, 2, 0}, b[3] = {0, 2, 1};
  Point out[3];
  k.compose(a, b, out, 3);
  CHECK(out[0] == 2);
  CHECK(out[1] == 1);
  CHECK(out[2] == 0);
  CHECK(k.compare(a, b, 3) == 1);
  CHECK(k.compare(b, a, 3) == -1);
  CHECK(k.compare(a, a, 3) == 0);
}

TEST_CASE("AVX2 kernels agree with the scalar reference") {
  const simd::KernelTable* avx2 = simd::avx2_kernels();
  if (avx2 == nullptr) {
    MESSAGE("AVX2 variant unavailable on this host; skipped");
    return;
  }
  check_equivalent(simd::scalar_kernels(), *avx2);
}

TEST_CASE("selected table is one of the compiled variants") {
  const auto& k = simd::kernels();
  CHECK((&k == &simd::scalar_kernels() || &k == simd::avx2_kernels()));
}
