#include "mf/conj_classes.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "mf/error.hpp"
#include "mf/simd/kernels.hpp"

namespace mf {
namespace {

struct RawClass {
  Permutation rep;
  std::vector<Permutation> members;
};

// Orbit of g under conjugation by the generators.
std::vector<Permutation> conjugation_orbit(const PermGroup& g, const Permutation& start) {
  std::vector<Permutation> orbit{start};
  std::unordered_map<Permutation, char, PermHash> seen{{start, 0}};
  std::vector<Permutation> gen_invs;
  for (const auto& s : g.generators()) gen_invs.push_back(s.inverse());
  for (std::size_t i = 0; i < orbit.size(); ++i) {
    for (std::size_t j = 0; j < g.generators().size(); ++j) {
      Permutation c = gen_invs[j] * orbit[i] * g.generators()[j];
      if (seen.emplace(c, 0).second) orbit.push_back(std::move(c));
    }
  }
  return orbit;
}

}  // namespace

std::size_t ConjClassTable::class_of(const Permutation& g) const {
  const auto it = lookup_.find(g);
  if (it == lookup_.end()) throw DomainError("element outside the group");
  return it->second;
}

std::size_t ConjClassTable::power_class(std::size_t k, std::int64_t power) const {
  return class_of(reps_.at(k).pow(power));
}

ConjClassTable conjugacy_classes(const PermGroup& g, const ClassOptions& opts) {
  if (g.order() > opts.max_order) {
    throw BoundError("group of order " + std::to_string(g.order()) +
                     " exceeds class-table bound " + std::to_string(opts.max_order));
  }
  std::vector<RawClass> raw;
  std::unordered_map<Permutation, std::size_t, PermHash> assigned;
  std::uint64_t covered = 0;

  auto absorb = [&](const Permutation& e) {
    if (assigned.count(e) != 0) return;
    RawClass c;
    c.members = conjugation_orbit(g, e);
    for (const auto& m : c.members) assigned.emplace(m, raw.size());
    c.rep = *std::min_element(c.members.begin(), c.members.end());
    covered += c.members.size();
    raw.push_back(std::move(c));
  };

  if (g.order() <= opts.full_enumeration) {
    for (const auto& e : g.elements(opts.max_order)) absorb(e);
  } else {
    absorb(Permutation(g.degree()));
    std::mt19937_64 rng(opts.seed);
    while (covered < g.order()) absorb(g.random_element(rng));
  }
  if (covered != g.order()) throw VerificationError("class sizes do not sum to |G|");

  std::vector<std::size_t> perm(raw.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::uint64_t> orders(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) orders[i] = element_order(raw[i].rep);
  std::sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
    if (orders[a] != orders[b]) return orders[a] < orders[b];
    if (raw[a].members.size() != raw[b].members.size()) {
      return raw[a].members.size() < raw[b].members.size();
    }
    return raw[a].rep < raw[b].rep;
  });

  ConjClassTable t;
  t.group_order_ = g.order();
  for (std::size_t k = 0; k < perm.size(); ++k) {
    RawClass& c = raw[perm[k]];
    t.reps_.push_back(c.rep);
    t.sizes_.push_back(c.members.size());
    t.orders_.push_back(orders[perm[k]]);
    t.exponent_ = std::lcm(t.exponent_, orders[perm[k]]);
    for (const auto& m : c.members) t.lookup_.emplace(m, k);
    t.members_.push_back(std::move(c.members));
  }
  for (std::size_t k = 0; k < t.reps_.size(); ++k) {
    t.inverse_map_.push_back(t.class_of(t.reps_[k].inverse()));
  }
  return t;
}

PairCanonicalizer::PairCanonicalizer(const PermGroup& g, std::uint64_t limit)
    : group_(&g), degree_(g.degree()), count_(g.order()) {
  if (g.order() > limit) {
    throw BoundError("canonical pair sweep bound exceeded (|G| = " + std::to_string(g.order()) +
                     ")");
  }
  elems_.reserve(count_ * degree_);
  invs_.reserve(count_ * degree_);
  for (const auto& e : g.elements(limit)) {
    const Permutation inv = e.inverse();
    elems_.insert(elems_.end(), e.images().begin(), e.images().end());
    invs_.insert(invs_.end(), inv.images().begin(), inv.images().end());
  }
}

PermPair PairCanonicalizer::canonical(const PermPair& p) const {
  if (!group_->contains(p.x) || !group_->contains(p.y)) {
    throw DomainError("pair element outside the group");
  }
  const auto& k = simd::kernels();
  const Point* x = p.x.images().data();
  const Point* y = p.y.images().data();
  std::vector<Point> best_x(p.x.images().begin(), p.x.images().end());
  std::vector<Point> best_y(p.y.images().begin(), p.y.images().end());
  for (std::size_t i = 0; i < count_; ++i) {
    const Point* h = elems_.data() + i * degree_;
    const Point* hinv = invs_.data() + i * degree_;
    const int cx = k.conjugate_compare(x, h, hinv, best_x.data(), degree_);
    if (cx > 0) continue;
    if (cx == 0 && k.conjugate_compare(y, h, hinv, best_y.data(), degree_) >= 0) continue;
    k.conjugate(x, h, hinv, best_x.data(), degree_);
    k.conjugate(y, h, hinv, best_y.data(), degree_);
  }
  return {PermBuilder::adopt(std::move(best_x)), PermBuilder::adopt(std::move(best_y))};
}

PermPair canonical_pair(const PermGroup& g, const Permutation& x, const Permutation& y) {
  return PairCanonicalizer(g).canonical({x, y});
}

}  // namespace mf
