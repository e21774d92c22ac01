#include <doctest.h>

#include <random>

#include "mf/error.hpp"
#include "mf/ppd.hpp"

using namespace mf;

namespace {

std::vector<std::uint64_t> naive_prime_divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    out.push_back(p);
    while (n % p == 0) n /= p;
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::uint64_t ipow(std::uint64_t a, std::uint64_t d) {
  std::uint64_t r = 1;
  while (d--) r *= a;
  return r;
}

}  // namespace

TEST_CASE("primality") {
  CHECK_FALSE(is_prime64(0));
  CHECK_FALSE(is_prime64(1));
  CHECK(is_prime64(2));
  CHECK(is_prime64(89));
  CHECK_FALSE(is_prime64(561));  // Carmichael
  CHECK(is_prime64(18446744073709551557ULL));
  CHECK_FALSE(is_prime64(3215031751ULL));  // strong pseudoprime to bases 2, 3, 5, 7
  for (std::uint64_t n = 0; n < 5000; ++n) {
    CHECK(is_prime64(n) == (naive_prime_divisors(n) == std::vector<std::uint64_t>{n} && n > 1));
  }
}

TEST_CASE("factoring") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const std::uint64_t n = rng() >> (rng() % 40);
    if (n < 2) continue;
    std::uint64_t prod = 1;
    for (auto [p, e] : factor64(n)) {
      CHECK(is_prime64(p));
      for (unsigned i = 0; i < e; ++i) prod *= p;
    }
    CHECK(prod == n);
  }
  const auto f = factor64(4294967291ULL * 4294967279ULL);
  REQUIRE(f.size() == 2);
  CHECK(f[0].first == 4294967279ULL);
  CHECK(f[1].first == 4294967291ULL);
  CHECK(factor64(1000003ULL * 1000003ULL) == std::vector<std::pair<std::uint64_t, unsigned>>{{1000003, 2}});
}

TEST_CASE("multiplicative order") {
  CHECK(multiplicative_order(2, 7) == 3);
  CHECK(multiplicative_order(2, 89) == 11);
  CHECK(multiplicative_order(3, 7) == 6);
  CHECK_THROWS_AS(multiplicative_order(7, 7), DomainError);
}

TEST_CASE("ppd examples") {
  const auto r26 = ppd(2, 6);
  CHECK_FALSE(r26.prime.has_value());
  CHECK(r26.exceptional);
  CHECK(ppd(2, 11).prime == 89u);
  const auto r32 = ppd(3, 2);
  CHECK_FALSE(r32.prime.has_value());
  CHECK(r32.exceptional);
  CHECK(ppd(2, 4).prime == 5u);
  CHECK(ppd(5, 2).prime == 3u);  // 24 = 2^3 * 3; 2 divides 5 - 1
  CHECK_THROWS_AS(ppd(1, 5), DomainError);
  CHECK_THROWS_AS(ppd(2, 1), DomainError);
  CHECK_THROWS_AS(ppd(10, 25), BoundError);
}

TEST_CASE("ppd agrees with naive factoring for small a, d") {
  for (std::uint64_t a = 2; a <= 10; ++a) {
    for (std::uint64_t d = 2; d <= 12; ++d) {
      const std::uint64_t n = ipow(a, d) - 1;
      std::optional<std::uint64_t> best;
      for (auto l : naive_prime_divisors(n)) {
        bool primitive = true;
        for (std::uint64_t i = 1; i < d; ++i) {
          if ((ipow(a, i) - 1) % l == 0) primitive = false;
        }
        if (primitive) best = l;
      }
      const auto r = ppd(a, d);
      CHECK_MESSAGE(r.prime == best, a, "^", d);
      CHECK(r.exceptional == !best.has_value());
      if (r.prime) {
        CHECK(n % *r.prime == 0);
        CHECK(*r.prime % d == 1);
        CHECK(*r.prime >= d + 1);
      }
    }
  }
}
