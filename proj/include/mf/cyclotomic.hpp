#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mf {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

std::uint64_t euler_phi(std::uint64_t n);
int mobius(std::uint64_t n);
std::vector<std::pair<std::uint64_t, unsigned>> factor_small(std::uint64_t n);

// Coefficients of the n-th cyclotomic polynomial, constant term first.
const std::vector<std::int64_t>& cyclotomic_polynomial(std::uint64_t n);

// An element of Z[zeta_N], zeta_N = exp(2 pi i / N), held in the unique
// form sum_{j < phi(N)} c_j zeta_N^j (reduced modulo Phi_N). Values with
// different N compare and combine by lifting to lcm(N, N').
class CycInt {
 public:
  CycInt() : CycInt(Integer(0)) {}
  explicit CycInt(Integer value, std::uint64_t conductor = 1);

  static CycInt root_of_unity(std::uint64_t n, std::uint64_t k);
  // sum_j mult[j] zeta_N^j for an arbitrary-length coefficient list (indices
  // taken mod N).
  static CycInt from_coefficients(std::uint64_t n, std::span<const Integer> coeffs);
  // Inverse of serialize().
  static CycInt parse(std::uint64_t n, std::string_view text);

  std::uint64_t conductor() const noexcept { return n_; }
  const std::vector<Integer>& coeffs() const noexcept { return c_; }

  // Same value expressed over zeta_M; requires N | M.
  CycInt lift(std::uint64_t m) const;
  // Complex conjugate: zeta^j -> zeta^{-j}.
  CycInt conj() const;

  bool is_zero() const;
  bool is_integer() const;  // value lies in Z
  Integer integer_value() const;  // requires is_integer()

  std::complex<long double> to_complex() const;
  // Bound on |value| from the coefficient 1-norm.
  long double abs_bound() const;

  // "c0,c1,..." with trailing zeros trimmed ("0" for zero).
  std::string serialize() const;

  CycInt operator-() const;
  friend CycInt operator+(const CycInt& a, const CycInt& b);
  friend CycInt operator-(const CycInt& a, const CycInt& b);
  friend CycInt operator*(const CycInt& a, const CycInt& b);
  friend CycInt operator*(const CycInt& a, const Integer& k);
  friend bool operator==(const CycInt& a, const CycInt& b);
  // Lexicographic on (conductor, coefficients); used for deterministic ordering only.
  friend bool lex_less(const CycInt& a, const CycInt& b);

 private:
  CycInt(std::uint64_t n, std::vector<Integer> reduced) : n_(n), c_(std::move(reduced)) {}
  static std::vector<Integer> reduce(std::uint64_t n, std::vector<Integer> poly);

  std::uint64_t n_ = 1;
  std::vector<Integer> c_;  // length phi(n_)
};

bool lex_less(const CycInt& a, const CycInt& b);

// Rational value of an element known to lie in Q, via the trace:
// x = Tr_{Q(zeta_N)/Q}(x) / phi(N). Exact; does not check rationality.
Rational trace_rational(const CycInt& x);

}  // namespace mf
