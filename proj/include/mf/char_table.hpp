#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include "mf/conj_classes.hpp"
#include "mf/cyclotomic.hpp"
#include "mf/perm_group.hpp"

namespace mf {

// Irreducible characters of a finite group. Row 0 is the trivial character;
// value(chi, k) lies in Z[zeta_{o_k}] where o_k is the element order of class k.
// The constructor checks every invariant (trivial row, degrees, exact row and
// column orthogonality) and throws VerificationError on failure.
class CharacterTable {
 public:
  CharacterTable(Integer group_order, Integer exponent, std::vector<Integer> class_sizes,
                 std::vector<std::uint64_t> class_orders, std::vector<std::size_t> inverse_map,
                 std::vector<std::vector<CycInt>> values);

  const Integer& group_order() const noexcept { return order_; }
  const Integer& exponent() const noexcept { return exponent_; }
  std::size_t size() const noexcept { return sizes_.size(); }
  const std::vector<Integer>& class_sizes() const noexcept { return sizes_; }
  const std::vector<std::uint64_t>& class_orders() const noexcept { return orders_; }
  const std::vector<std::size_t>& inverse_map() const noexcept { return inverse_; }
  const std::vector<Integer>& degrees() const noexcept { return degrees_; }
  const CycInt& value(std::size_t chi, std::size_t k) const { return values_.at(chi).at(k); }
  const std::vector<CycInt>& row(std::size_t chi) const { return values_.at(chi); }

  friend bool operator==(const CharacterTable& a, const CharacterTable& b);

 private:
  void verify() const;

  Integer order_;
  Integer exponent_;
  std::vector<Integer> sizes_;
  std::vector<std::uint64_t> orders_;
  std::vector<std::size_t> inverse_;
  std::vector<std::vector<CycInt>> values_;
  std::vector<Integer> degrees_;
};

struct DixonOptions {
  std::uint64_t max_order = 100'000;
  std::uint64_t prime_limit = 1ULL << 31;
};

// Least prime p = 1 (mod e) with p > 2 sqrt(order); 0 if none below limit.
std::uint64_t dixon_prime(std::uint64_t order, std::uint64_t exponent, std::uint64_t limit);

// #{(a, b) : a in C_i, b in C_j, ab = z} by enumeration of C_i.
std::uint64_t class_constant(const PermGroup& g, const ConjClassTable& cc, std::size_t i,
                             std::size_t j, const Permutation& z);

// Dixon-Schur: simultaneous eigenvectors of the class matrices over F_p,
// lifted to exact values through eigenvalue multiplicities. Characters are
// ordered trivial first, then by degree, then by value vector.
CharacterTable dixon_table(const PermGroup& g, const ConjClassTable& cc,
                           const DixonOptions& opts = {});
CharacterTable dixon_table(const PermGroup& g, const DixonOptions& opts = {});

struct TripleCount {
  std::array<std::size_t, 3> class_indices{};
  // Number of (a, b) in C_i x C_j with ab equal to a fixed element of C_k.
  Integer count;
  // sum_chi chi(c_i) chi(c_j) conj(chi(c_k)) / chi(1); count = |C_i||C_j|/|G| * rational_sum.
  Rational rational_sum;
  // Same sum with chi(c_k) in place of its conjugate (the count for the class
  // of inverses of C_k, up to the same factor).
  Rational direct_sum;
};

TripleCount frobenius_count(const CharacterTable& t, std::size_t i, std::size_t j, std::size_t k);

// |sum over nontrivial chi of chi(c_i) chi(c_j) chi(c_k) / chi(1)|.
// `exact` comes from the exact direct sum; [lower, upper] is an independent
// enclosure from the complex embedding, checked to contain `exact`.
struct Sum1Bound {
  Rational exact;
  long double approx = 0;
  long double lower = 0;
  long double upper = 0;
  bool below_one() const { return exact < 1; }
};

Sum1Bound sum1_bound(const CharacterTable& t, std::size_t i, std::size_t j, std::size_t k);

// Text format, version 1:
//   format mf-chartab 1
//   order N / exponent E / classes K
//   sizes ..., orders ..., inverses ... (1-based class numbers)
//   K lines of K values; each value is "m0,m1,..." meaning sum m_j zeta_o^j
//   with o the element order of that column's class.
// Lines starting with '#' are comments.
void write_table(std::ostream& out, const CharacterTable& t);
void write_table(const std::filesystem::path& path, const CharacterTable& t);
CharacterTable read_table(std::istream& in);
CharacterTable read_table(const std::filesystem::path& path);

}  // namespace mf
