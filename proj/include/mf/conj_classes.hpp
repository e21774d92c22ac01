#pragma once

#include <cstddef>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "mf/perm.hpp"
#include "mf/perm_group.hpp"

namespace mf {

struct ClassOptions {
  std::uint64_t max_order = kDefaultEnumerationBound;
  // Up to this order every element is enumerated; above it classes are found
  // by random search until the class sizes sum to |G|.
  std::uint64_t full_enumeration = 100'000;
  std::uint64_t seed = 1;
};

// Conjugacy classes sorted by (element order, class size, representative),
// where the representative is the lexicographically least class member.
class ConjClassTable {
 public:
  std::size_t size() const noexcept { return reps_.size(); }
  std::uint64_t group_order() const noexcept { return group_order_; }
  std::uint64_t exponent() const noexcept { return exponent_; }

  const std::vector<Permutation>& reps() const noexcept { return reps_; }
  const std::vector<std::uint64_t>& sizes() const noexcept { return sizes_; }
  const std::vector<std::uint64_t>& orders() const noexcept { return orders_; }
  const std::vector<std::size_t>& inverse_map() const noexcept { return inverse_map_; }
  const std::vector<Permutation>& members(std::size_t k) const { return members_.at(k); }

  // Throws DomainError for elements outside the group.
  std::size_t class_of(const Permutation& g) const;
  // Class of reps[k]^power.
  std::size_t power_class(std::size_t k, std::int64_t power) const;

 private:
  friend ConjClassTable conjugacy_classes(const PermGroup&, const ClassOptions&);

  std::uint64_t group_order_ = 1;
  std::uint64_t exponent_ = 1;
  std::vector<Permutation> reps_;
  std::vector<std::uint64_t> sizes_;
  std::vector<std::uint64_t> orders_;
  std::vector<std::size_t> inverse_map_;
  std::vector<std::vector<Permutation>> members_;
  std::unordered_map<Permutation, std::size_t, PermHash> lookup_;
};

// Throws BoundError when |G| exceeds opts.max_order.
ConjClassTable conjugacy_classes(const PermGroup& g, const ClassOptions& opts = {});

// Canonical representative of the Inn(G)-orbit of a pair: the least
// (h^-1 x h, h^-1 y h) over h in G, comparing x-images first. Holds the
// element list (and inverses) of G so repeated calls cost one sweep each.
class PairCanonicalizer {
 public:
  explicit PairCanonicalizer(const PermGroup& g, std::uint64_t limit = 100'000);

  PermPair canonical(const PermPair& p) const;
  const PermGroup& group() const noexcept { return *group_; }

 private:
  const PermGroup* group_;
  std::size_t degree_;
  std::size_t count_;
  std::vector<Point> elems_;  // count_ x degree_, row-major
  std::vector<Point> invs_;
};

PermPair canonical_pair(const PermGroup& g, const Permutation& x, const Permutation& y);

}  // namespace mf
