#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace mf {

std::uint64_t mulmod64(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t powmod64(std::uint64_t a, std::uint64_t e, std::uint64_t m);
// Deterministic Miller-Rabin for all 64-bit inputs.
bool is_prime64(std::uint64_t n);
// Prime factorization (ascending primes with exponents): trial division up
// to 10^6, then Pollard rho (Brent) on the cofactor.
std::vector<std::pair<std::uint64_t, unsigned>> factor64(std::uint64_t n);
// Multiplicative order of a modulo prime p (a not divisible by p).
std::uint64_t multiplicative_order(std::uint64_t a, std::uint64_t p);

struct PpdResult {
  std::uint64_t a = 0;
  std::uint64_t d = 0;
  std::optional<std::uint64_t> prime;  // largest primitive prime divisor of a^d - 1
  bool exceptional = false;           // (a, d) = (2, 6), or d = 2 and a + 1 a power of 2
};

// Throws DomainError for a < 2 or d < 2, BoundError when a^d - 1 exceeds 64 bits.
PpdResult ppd(std::uint64_t a, std::uint64_t d);

}  // namespace mf
