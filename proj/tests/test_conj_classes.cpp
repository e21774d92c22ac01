#include <map>

#include "doctest.h"
#include "mf/conj_classes.hpp"
#include "mf/error.hpp"
#include "oracles.hpp"

using namespace mf;
using oracle::cyc;

namespace {

PermGroup a5() { return PermGroup::from_generators({cyc(5, "(1 2 3 4 5)"), cyc(5, "(1 2 3)")}); }

std::multiset<std::uint64_t> multiset_of(const std::vector<std::uint64_t>& v) {
  return {v.begin(), v.end()};
}

}  // namespace

TEST_CASE("A5 classes") {
  const auto t = conjugacy_classes(a5());
  REQUIRE(t.size() == 5);
  CHECK(t.sizes() == std::vector<std::uint64_t>{1, 15, 20, 12, 12});
  CHECK(t.orders() == std::vector<std::uint64_t>{1, 2, 3, 5, 5});
  CHECK(t.exponent() == 30);
  CHECK(t.reps()[0].is_identity());
  // 5A and 5B are swapped by squaring but each is closed under inversion.
  CHECK(t.inverse_map() == std::vector<std::size_t>{0, 1, 2, 3, 4});
  CHECK(t.power_class(3, 2) == 4);
}

TEST_CASE("C4 and S3 classes") {
  const auto c4 = conjugacy_classes(PermGroup::from_generators({cyc(4, "(1 2 3 4)")}));
  CHECK(c4.size() == 4);
  for (auto s : c4.sizes()) CHECK(s == 1);
  CHECK(c4.inverse_map() == std::vector<std::size_t>{0, 1, 3, 2});

  const auto s3 = conjugacy_classes(PermGroup::from_generators({cyc(3, "(1 2)"), cyc(3, "(1 2 3)")}));
  CHECK(multiset_of(s3.sizes()) == std::multiset<std::uint64_t>{1, 3, 2});
}

TEST_CASE("class tables agree with brute-force partitions") {
  const std::vector<std::vector<Permutation>> sets = {
      {cyc(5, "(1 2 3 4 5)"), cyc(5, "(1 2 3)")},
      {cyc(4, "(1 2)"), cyc(4, "(1 2 3 4)")},
      {cyc(8, "(1 2 3 4 5 6 7)"), cyc(8, "(1 8)(2 7)(3 4)(5 6)")},
      {cyc(8, "(1 2 3 4)(5 6 7 8)"), cyc(8, "(1 5 3 7)(2 8 4 6)")},
      {cyc(6, "(1 2 3 4 5 6)"), cyc(6, "(1 6)(2 5)(3 4)")},
  };
  for (const auto& gens : sets) {
    const auto g = PermGroup::from_generators(gens);
    const auto elems = oracle::closure(gens);
    const auto brute = oracle::brute_classes(elems);
    const auto t = conjugacy_classes(g);
    REQUIRE(t.size() == brute.size());
    std::uint64_t total = 0;
    for (std::size_t k = 0; k < t.size(); ++k) {
      total += t.sizes()[k];
      CHECK(g.order() % t.sizes()[k] == 0);
      CHECK(t.sizes()[k] * oracle::centralizer_order(elems, t.reps()[k]) == g.order());
      CHECK(t.inverse_map()[t.inverse_map()[k]] == k);
      CHECK(t.orders()[k] == oracle::naive_order(t.reps()[k]));
    }
    CHECK(total == g.order());
    for (const auto& cls : brute) {
      const std::size_t k = t.class_of(cls.front());
      CHECK(t.sizes()[k] == cls.size());
      for (const auto& e : cls) CHECK(t.class_of(e) == k);
      CHECK(t.reps()[k] == cls.front());  // brute classes are sorted sets
    }
  }
}

TEST_CASE("random-search class mode agrees with full enumeration") {
  const auto g = PermGroup::from_generators({cyc(8, "(1 2 3 4 5 6 7)"), cyc(8, "(1 8)(2 7)(3 4)(5 6)")});
  ClassOptions search;
  search.full_enumeration = 10;
  const auto a = conjugacy_classes(g);
  const auto b = conjugacy_classes(g, search);
  CHECK(a.reps() == b.reps());
  CHECK(a.sizes() == b.sizes());
}

TEST_CASE("class table bound") {
  ClassOptions opts;
  opts.max_order = 59;
  CHECK_THROWS_AS(conjugacy_classes(a5(), opts), BoundError);
  const auto t = conjugacy_classes(a5());
  CHECK_THROWS_AS(t.class_of(cyc(5, "(1 2)")), DomainError);
}

TEST_CASE("canonical_pair examples") {
  const auto g = a5();
  const Permutation e(5);
  const auto id = canonical_pair(g, e, e);
  CHECK(id.x.is_identity());
  CHECK(id.y.is_identity());

  const auto x = cyc(5, "(1 2 3 4 5)");
  const auto y = cyc(5, "(1 2 3)");
  const auto h = cyc(5, "(1 2)(3 4)");
  CHECK(canonical_pair(g, x, y) == canonical_pair(g, x.conjugate_by(h), y.conjugate_by(h)));
  CHECK_THROWS_AS(canonical_pair(g, cyc(5, "(1 2)"), y), DomainError);
}

TEST_CASE("canonical_pair is idempotent, Inn-invariant and minimal") {
  std::mt19937_64 rng(5);
  const std::vector<std::vector<Permutation>> sets = {
      {cyc(5, "(1 2 3 4 5)"), cyc(5, "(1 2 3)")},
      {cyc(4, "(1 2)"), cyc(4, "(1 2 3 4)")},
      {cyc(8, "(1 2 3 4 5 6 7)"), cyc(8, "(1 8)(2 7)(3 4)(5 6)")},
  };
  for (const auto& gens : sets) {
    const auto g = PermGroup::from_generators(gens);
    const PairCanonicalizer canon(g);
    const auto elems = oracle::closure(gens);
    for (int i = 0; i < 100; ++i) {
      const PermPair p{g.random_element(rng), g.random_element(rng)};
      const auto h = g.random_element(rng);
      const auto c = canon.canonical(p);
      CHECK(canon.canonical(c) == c);
      CHECK(canon.canonical({p.x.conjugate_by(h), p.y.conjugate_by(h)}) == c);
      if (i < 10) {
        PermPair best = p;
        for (const auto& k : elems) best = std::min(best, PermPair{p.x.conjugate_by(k), p.y.conjugate_by(k)});
        CHECK(best == c);
      }
    }
  }
}
