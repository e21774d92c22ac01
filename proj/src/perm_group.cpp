#include "mf/perm_group.hpp"

#include <algorithm>
#include <numeric>

#include "mf/error.hpp"

namespace mf {

PermGroup PermGroup::trivial(std::size_t degree) {
  PermGroup g(degree);
  g.gens_.emplace_back(degree);
  return g;
}

PermGroup PermGroup::from_generators(std::vector<Permutation> gens) {
  if (gens.empty()) throw DomainError("empty generator list");
  const std::size_t n = gens.front().degree();
  for (const auto& s : gens) {
    if (s.degree() != n) throw DomainError("generators have different degrees");
  }
  PermGroup g(n);
  for (const auto& s : gens) {
    auto [residue, level] = g.sift(s, 0);
    if (!residue.is_identity()) g.add_strong_generator(0, level, std::move(residue));
  }
  g.gens_ = std::move(gens);

  unsigned __int128 order = 1;
  for (const auto& lv : g.levels_) {
    order *= lv.orbit.size();
    if (order > static_cast<unsigned __int128>(UINT64_MAX)) {
      throw BoundError("group order exceeds 64 bits");
    }
  }
  g.order_ = static_cast<std::uint64_t>(order);
  return g;
}

std::pair<Permutation, std::size_t> PermGroup::sift(Permutation g, std::size_t from) const {
  for (std::size_t i = from; i < levels_.size(); ++i) {
    const Level& lv = levels_[i];
    const std::int32_t k = lv.slot[g[lv.base]];
    if (k < 0) return {std::move(g), i};
    g = g * lv.rep_invs[static_cast<std::size_t>(k)];
  }
  return {std::move(g), levels_.size()};
}

void PermGroup::extend_orbit(Level& lv) {
  for (std::size_t k = 0; k < lv.orbit.size(); ++k) {
    for (const auto& s : lv.gens) {
      const Point q = s[lv.orbit[k]];
      if (lv.slot[q] >= 0) continue;
      lv.slot[q] = static_cast<std::int32_t>(lv.orbit.size());
      lv.orbit.push_back(q);
      Permutation r = lv.reps[k] * s;
      lv.rep_invs.push_back(r.inverse());
      lv.reps.push_back(std::move(r));
      lv.done.push_back(0);
    }
  }
}

// g fixes the base points of levels [0, to) and joins the generators of
// levels [from, to]. Invariant on return: levels [from, end) form a complete
// BSGS of the group they generate.
void PermGroup::add_strong_generator(std::size_t from, std::size_t to, Permutation g) {
  if (to == levels_.size()) {
    Level lv;
    const auto moved = std::find_if(g.images().begin(), g.images().end(),
                                    [i = Point{0}](Point p) mutable { return p != i++; });
    lv.base = static_cast<Point>(moved - g.images().begin());
    lv.slot.assign(degree_, -1);
    lv.slot[lv.base] = 0;
    lv.orbit.push_back(lv.base);
    lv.reps.emplace_back(degree_);
    lv.rep_invs.emplace_back(degree_);
    lv.done.push_back(0);
    levels_.push_back(std::move(lv));
  }
  for (std::size_t j = to + 1; j-- > from;) {
    levels_[j].gens.push_back(g);
    extend_orbit(levels_[j]);
    complete_level(j);
  }
}

// Sifts every unprocessed Schreier generator r_p * s * r_{p^s}^-1 of a level.
// Deeper levels may grow while we iterate; this level may not.
void PermGroup::complete_level(std::size_t level) {
  for (std::size_t k = 0; k < levels_[level].orbit.size(); ++k) {
    while (levels_[level].done[k] < levels_[level].gens.size()) {
      const Level& lv = levels_[level];
      const Permutation& s = lv.gens[lv.done[k]];
      const Point q = s[lv.orbit[k]];
      Permutation schreier =
          lv.reps[k] * s * lv.rep_invs[static_cast<std::size_t>(lv.slot[q])];
      levels_[level].done[k]++;
      auto [residue, stop] = sift(std::move(schreier), level + 1);
      if (!residue.is_identity()) add_strong_generator(level + 1, stop, std::move(residue));
    }
  }
}

bool PermGroup::contains(const Permutation& g) const {
  if (g.degree() != degree_) return false;
  auto [residue, level] = sift(g, 0);
  return level == levels_.size() && residue.is_identity();
}

bool PermGroup::is_abelian() const {
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    for (std::size_t j = i + 1; j < gens_.size(); ++j) {
      if (!gens_[i].commutes_with(gens_[j])) return false;
    }
  }
  return true;
}

bool PermGroup::centralizes(const PermGroup& sub) const {
  if (sub.degree() != degree_) return false;
  for (const auto& a : gens_) {
    for (const auto& b : sub.generators()) {
      if (!a.commutes_with(b)) return false;
    }
  }
  return true;
}

std::vector<Point> PermGroup::base() const {
  std::vector<Point> b;
  for (const auto& lv : levels_) b.push_back(lv.base);
  return b;
}

std::vector<std::size_t> PermGroup::transversal_sizes() const {
  std::vector<std::size_t> s;
  for (const auto& lv : levels_) s.push_back(lv.orbit.size());
  return s;
}

Permutation PermGroup::random_element(std::mt19937_64& rng) const {
  Permutation g(degree_);
  for (const auto& lv : levels_) {
    std::uniform_int_distribution<std::size_t> pick(0, lv.orbit.size() - 1);
    g = g * lv.reps[pick(rng)];
  }
  return g;
}

Permutation PermGroup::element_at(std::uint64_t index) const {
  if (index >= order_) throw DomainError("element index out of range");
  Permutation g(degree_);
  // g = u_{L-1} ... u_0 with the level-0 digit most significant, matching elements().
  std::uint64_t stride = 1;
  for (std::size_t i = levels_.size(); i-- > 0;) {
    const auto& lv = levels_[i];
    const std::uint64_t digit = (index / stride) % lv.orbit.size();
    g = g * lv.reps[digit];
    stride *= lv.orbit.size();
  }
  return g;
}

std::vector<Permutation> PermGroup::elements(std::uint64_t limit) const {
  if (order_ > limit) {
    throw BoundError("group of order " + std::to_string(order_) +
                     " exceeds enumeration bound " + std::to_string(limit));
  }
  // Build level by level: E_i = { h * r : h in E_{i+1}, r in T_i }.
  std::vector<Permutation> elems{Permutation(degree_)};
  for (std::size_t i = levels_.size(); i-- > 0;) {
    std::vector<Permutation> next;
    next.reserve(elems.size() * levels_[i].reps.size());
    for (const auto& r : levels_[i].reps) {
      for (const auto& h : elems) next.push_back(h * r);
    }
    elems = std::move(next);
  }
  return elems;
}

bool generates(const PermGroup& ambient, const Permutation& x, const Permutation& y) {
  if (!ambient.contains(x) || !ambient.contains(y)) {
    throw DomainError("element outside the ambient group");
  }
  return PermGroup::from_generators({x, y}).order() == ambient.order();
}

PermGroup subgroup_generated(std::size_t degree, std::span<const Permutation> elems) {
  std::vector<Permutation> gens;
  PermGroup h = PermGroup::trivial(degree);
  for (const auto& e : elems) {
    if (h.contains(e)) continue;
    gens.push_back(e);
    h = PermGroup::from_generators(gens);
  }
  return gens.empty() ? PermGroup::trivial(degree) : h;
}

PermGroup center(const PermGroup& g, std::uint64_t limit) {
  std::vector<Permutation> central;
  for (auto& e : g.elements(limit)) {
    const bool ok = std::all_of(g.generators().begin(), g.generators().end(),
                                [&](const Permutation& s) { return s.commutes_with(e); });
    if (ok && !e.is_identity()) central.push_back(std::move(e));
  }
  return subgroup_generated(g.degree(), central);
}

std::uint64_t order_mod_subgroup(const PermGroup& g, const PermGroup& z, const Permutation& x) {
  if (!g.contains(x)) throw DomainError("element outside the group");
  if (!g.centralizes(z)) throw DomainError("subgroup is not central");
  for (const auto& s : z.generators()) {
    if (!g.contains(s)) throw DomainError("subgroup is not contained in the group");
  }
  Permutation p = x;
  for (std::uint64_t k = 1;; ++k) {
    if (z.contains(p)) return k;
    p = p * x;
  }
}

namespace {

// Cycle (first first+1 ... n-1) on {0, ..., n-1}.
Permutation tail_cycle(std::size_t n, std::size_t first) {
  std::vector<Point> img(n);
  for (std::size_t i = 0; i < n; ++i) img[i] = static_cast<Point>(i);
  for (std::size_t i = first; i + 1 < n; ++i) img[i] = static_cast<Point>(i + 1);
  if (first < n) img[n - 1] = static_cast<Point>(first);
  return Permutation(std::move(img));
}

}  // namespace

PermGroup alternating_group(std::size_t n) {
  if (n == 0) throw DomainError("degree must be positive");
  if (n < 3) return PermGroup::trivial(n);
  return PermGroup::from_generators(
      {Permutation::from_cycles(n, "(1 2 3)"), tail_cycle(n, n % 2 == 1 ? 0 : 1)});
}

PermGroup symmetric_group(std::size_t n) {
  if (n == 0) throw DomainError("degree must be positive");
  if (n == 1) return PermGroup::trivial(1);
  return PermGroup::from_generators({tail_cycle(n, 0), Permutation::from_cycles(n, "(1 2)")});
}

}  // namespace mf
