#include "mf/ppd.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <string>

#include "mf/error.hpp"

namespace mf {

std::uint64_t mulmod64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  for (a %= m; e; e >>= 1, a = mulmod64(a, a, m)) {
    if (e & 1) r = mulmod64(r, a, m);
  }
  return r;
}

bool is_prime64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::uint64_t x = powmod64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s && composite; ++r) {
      x = mulmod64(x, x, n);
      if (x == n - 1) composite = false;
    }
    if (composite) return false;
  }
  return true;
}

namespace {

// A nontrivial factor of the odd composite n.
std::uint64_t pollard_brent(std::uint64_t n) {
  for (std::uint64_t c = 1;; ++c) {
    auto f = [&](std::uint64_t v) { return (mulmod64(v, v, n) + c) % n; };
    std::uint64_t y = 2, x = 2, g = 1, q = 1, ys = 2;
    const std::uint64_t m = 128;
    for (std::uint64_t r = 1; g == 1; r <<= 1) {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) y = f(y);
      for (std::uint64_t k = 0; k < r && g == 1; k += m) {
        ys = y;
        for (std::uint64_t i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          q = mulmod64(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
      }
    }
    if (g == n) {
      do {
        ys = f(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void split(std::uint64_t n, std::map<std::uint64_t, unsigned>& out) {
  if (n == 1) return;
  if (is_prime64(n)) {
    ++out[n];
    return;
  }
  const std::uint64_t f = pollard_brent(n);
  split(f, out);
  split(n / f, out);
}

}  // namespace

std::vector<std::pair<std::uint64_t, unsigned>> factor64(std::uint64_t n) {
  std::map<std::uint64_t, unsigned> f;
  for (std::uint64_t p = 2; p <= 1'000'000 && p * p <= n; p += (p == 2 ? 1 : 2)) {
    while (n % p == 0) {
      ++f[p];
      n /= p;
    }
  }
  split(n, f);
  return {f.begin(), f.end()};
}

std::uint64_t multiplicative_order(std::uint64_t a, std::uint64_t p) {
  if (a % p == 0) throw DomainError("multiplicative order of a non-unit");
  std::uint64_t ord = p - 1;
  for (auto [q, e] : factor64(p - 1)) {
    for (unsigned i = 0; i < e && ord % q == 0 && powmod64(a, ord / q, p) == 1; ++i) ord /= q;
  }
  return ord;
}

PpdResult ppd(std::uint64_t a, std::uint64_t d) {
  if (a < 2 || d < 2) throw DomainError("ppd needs a >= 2 and d >= 2");
  unsigned __int128 power = 1;
  for (std::uint64_t i = 0; i < d; ++i) {
    power *= a;
    if (power > static_cast<unsigned __int128>(UINT64_MAX)) {
      throw BoundError("factoring budget exceeded: " + std::to_string(a) + "^" + std::to_string(d) +
                       " - 1 exceeds 64 bits");
    }
  }
  const auto n = static_cast<std::uint64_t>(power - 1);

  PpdResult r{a, d, std::nullopt, false};
  const auto f = factor64(n);
  for (auto it = f.rbegin(); it != f.rend(); ++it) {
    if (a % it->first != 0 && multiplicative_order(a, it->first) == d) {
      r.prime = it->first;
      break;
    }
  }
  const bool power_of_two = ((a + 1) & a) == 0;
  const bool zsigmondy = (a == 2 && d == 6) || (d == 2 && power_of_two);
  if (r.prime.has_value() == zsigmondy) {
    throw VerificationError("primitive prime divisor search contradicts Zsigmondy's theorem");
  }
  r.exceptional = zsigmondy;
  return r;
}

}  // namespace mf
