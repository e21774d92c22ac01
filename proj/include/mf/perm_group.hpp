#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "mf/perm.hpp"

namespace mf {

// Default cap on explicit element enumeration.
inline constexpr std::uint64_t kDefaultEnumerationBound = 1'000'000;

// A permutation group held as a base and strong generating set.
// Immutable after construction; safe to share read-only between threads.
class PermGroup {
 public:
  // Deterministic Schreier-Sims. Throws DomainError on an empty list or
  // mixed degrees.
  static PermGroup from_generators(std::vector<Permutation> gens);
  static PermGroup trivial(std::size_t degree);

  std::size_t degree() const noexcept { return degree_; }
  const std::vector<Permutation>& generators() const noexcept { return gens_; }
  std::uint64_t order() const noexcept { return order_; }

  bool contains(const Permutation& g) const;
  bool is_abelian() const;
  // Each generator of `sub` commutes with each generator of this group.
  bool centralizes(const PermGroup& sub) const;

  std::vector<Point> base() const;
  std::vector<std::size_t> transversal_sizes() const;

  // Uniformly random element (one random coset representative per level).
  Permutation random_element(std::mt19937_64& rng) const;
  // Bijection [0, order) -> G in mixed-radix order over the transversals.
  Permutation element_at(std::uint64_t index) const;
  std::vector<Permutation> elements(std::uint64_t limit = kDefaultEnumerationBound) const;

 private:
  struct Level {
    Point base = 0;
    std::vector<Permutation> gens;
    std::vector<std::int32_t> slot;  // point -> index into orbit, -1 if absent
    std::vector<Point> orbit;
    std::vector<Permutation> reps;      // base^reps[k] == orbit[k]
    std::vector<Permutation> rep_invs;
    std::vector<std::size_t> done;      // per orbit point: gens already processed
  };

  explicit PermGroup(std::size_t degree) : degree_(degree) {}

  // Strips g through levels [from, end); returns the residue and the level it
  // stopped at (levels_.size() when it passed every level).
  std::pair<Permutation, std::size_t> sift(Permutation g, std::size_t from) const;
  void add_strong_generator(std::size_t from, std::size_t to, Permutation g);
  void complete_level(std::size_t level);
  void extend_orbit(Level& lv);

  std::size_t degree_ = 0;
  std::vector<Permutation> gens_;
  std::vector<Level> levels_;
  std::uint64_t order_ = 1;
};

// ⟨x, y⟩ == ambient. Throws DomainError if x or y lies outside ambient.
bool generates(const PermGroup& ambient, const Permutation& x, const Permutation& y);

// Subgroup of elements commuting with every generator (brute force within limit).
PermGroup center(const PermGroup& g, std::uint64_t limit = kDefaultEnumerationBound);

// Least k >= 1 with x^k in z. Requires z central in g and x in g.
std::uint64_t order_mod_subgroup(const PermGroup& g, const PermGroup& z, const Permutation& x);

// Natural actions on {1, ..., n}. A_n uses (1 2 3) with (1 2 ... n) for odd n
// or (2 3 ... n) for even n; S_n uses (1 2 ... n) and (1 2). n >= 1.
PermGroup alternating_group(std::size_t n);
PermGroup symmetric_group(std::size_t n);

// Smallest subgroup containing the given elements, built incrementally
// (elements already present are skipped).
PermGroup subgroup_generated(std::size_t degree, std::span<const Permutation> elems);

}  // namespace mf
