#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "mf/char_table.hpp"
#include "mf/conj_classes.hpp"
#include "mf/perm.hpp"
#include "mf/perm_group.hpp"

namespace mf {

// A pair (x, y) with the orders r = |x|, s = |y|, t = |xy| and
// delta = gcd(rs, rt, st); delta == 1 exactly when r, s, t are pairwise coprime.
struct TripleWitness {
  Permutation x;
  Permutation y;
  std::array<std::uint64_t, 3> orders{};
  std::uint64_t delta = 0;
  std::array<std::uint64_t, 3> gcds{};  // gcd(r, s), gcd(r, t), gcd(s, t)
  bool generates = false;
  // Set when checked against a central subgroup Z: |w| equals the order of
  // wZ for w in {x, y, xy}.
  std::optional<bool> smooth;
  // Number of (a, b) in x^G x y^G with ab = xy, when a character table is given.
  std::optional<Integer> frobenius_count;
  std::optional<std::array<std::size_t, 3>> classes;

  bool coprime() const { return delta == 1; }
};

// Throws DomainError if x or y lies outside g, or z is not central.
TripleWitness verify_witness(const PermGroup& g, const Permutation& x, const Permutation& y,
                             const CharacterTable* table = nullptr, const ConjClassTable* cc = nullptr,
                             const PermGroup* z = nullptr);

struct SearchOptions {
  std::uint64_t budget = 20'000;  // iterations
  std::uint64_t seed = 1;
  unsigned workers = 1;
  // When set, look for a generating pair with x, y, xy of order coprime to
  // |Z| (hence smooth for Z) instead of a pairwise coprime triple.
  const PermGroup* require_smooth = nullptr;
};

struct SearchResult {
  std::optional<TripleWitness> witness;
  std::string reason;  // "found", "trivial group", "abelian obstruction", "budget exhausted"
  std::uint64_t obstruction_delta = 0;  // exponent of G for the abelian obstruction
  std::uint64_t iterations = 0;         // index of the winning iteration + 1, or the budget
};

// Randomized search: each iteration draws two uniform elements (seeded from
// (seed, iteration)), powers them down to a ranked pair of target orders and
// tests the triple. The reported witness is the one with least iteration
// index, independent of the worker count. Absence is not a proof.
SearchResult search_coprime_pair(const PermGroup& g, const SearchOptions& opts = {});

// True iff each of x, y, xy has the same order in G and in G/Z.
// Throws DomainError if z is not a central subgroup of g.
bool smooth_pair_check(const PermGroup& g, const PermGroup& z, const Permutation& x,
                       const Permutation& y);

struct AlternatingWitness {
  Permutation u;
  Permutation v;
  Permutation conjugator;   // v = v0^conjugator for the fixed base cycle v0
  std::string conjugation;  // "A_n" or "S_n"
  TripleWitness report;
};

// u an n-cycle and v an (n-2)-cycle (n odd), or u an (n-1)-cycle and v an
// (n-3)-cycle (n even), with v conjugated so that uv has the target cycle
// type: a double transposition (n = 5), an (n-4)-cycle (odd n >= 7), a
// 5-cycle plus an (n-5)-cycle (n = 2, 4 mod 5) or a 2-cycle plus an
// (n-2)-cycle (n = 0, 1, 3 mod 5). The conjugator is the first even
// permutation in lexicographic order that works (odd ones as a fallback).
AlternatingWitness alternating_witness(std::size_t n);

enum class NielsenVerdict { equivalent, inequivalent, unknown };
std::string_view to_string(NielsenVerdict v);

// Moves on pairs, applied left to right in a word:
//   R: (x, y) -> (x, xy)     r: (x, y) -> (x, x^-1 y)
//   L: (x, y) -> (xy, y)     l: (x, y) -> (x y^-1, y)
//   I: (x, y) -> (x, y^-1)
PermPair apply_nielsen_move(const PermPair& p, char move);
PermPair apply_nielsen_word(const PermPair& p, std::string_view word);

struct NielsenOptions {
  std::uint64_t bound = 200'000;  // total states visited over both searches
  bool mod_inn = false;           // identify pairs up to simultaneous conjugation
  bool check_generation = true;   // assert every visited pair still generates
};

struct NielsenResult {
  NielsenVerdict verdict = NielsenVerdict::unknown;
  // For `equivalent`: a word taking p1 to p2 (to a conjugate of p2 with mod_inn).
  std::string certificate;
  std::uint64_t explored = 0;
};

// Bidirectional breadth-first search. `inequivalent` means one side's orbit
// was exhausted below the bound without meeting the other.
// Throws DomainError unless both pairs generate g.
NielsenResult nielsen_equivalent(const PermGroup& g, const PermPair& p1, const PermPair& p2,
                                 const NielsenOptions& opts = {});

}  // namespace mf
