#include <doctest.h>

#include <numeric>
#include <random>

#include "groups.hpp"
#include "mf/error.hpp"
#include "mf/triples.hpp"
#include "oracles.hpp"

using namespace mf;
using oracle::cyc;

namespace {

PermGroup cyclic(std::size_t n) {
  std::vector<Point> img(n);
  for (std::size_t i = 0; i < n; ++i) img[i] = static_cast<Point>((i + 1) % n);
  return PermGroup::from_generators({Permutation(std::move(img))});
}

std::vector<std::size_t> nontrivial_type(const Permutation& p) {
  std::vector<std::size_t> t;
  for (auto l : p.cycle_lengths())
    if (l > 1) t.push_back(l);
  std::sort(t.begin(), t.end());
  return t;
}

}  // namespace

TEST_CASE("verify_witness examples") {
  const auto a5 = testgroups::make("A5");
  const auto x = cyc(5, "(1 2 3 4 5)");
  const auto y = cyc(5, "(1 2 3)");
  const auto w = verify_witness(a5, x, y);
  const std::uint64_t t = oracle::naive_order(x * y);
  CHECK(w.orders == std::array<std::uint64_t, 3>{5, 3, t});
  CHECK(w.delta == std::gcd(std::gcd(15 * 1ULL, 5 * t), 3 * t));
  CHECK(w.generates == (oracle::closure({x, y}).size() == 60));

  const auto id = verify_witness(a5, Permutation(5), Permutation(5));
  CHECK(id.orders == std::array<std::uint64_t, 3>{1, 1, 1});
  CHECK_FALSE(id.generates);

  const auto s4 = testgroups::make("S4");
  const auto cox = verify_witness(s4, cyc(4, "(1 2)"), cyc(4, "(1 2 3 4)"));
  CHECK(cox.orders == std::array<std::uint64_t, 3>{2, 4, 3});
  CHECK(cox.delta == 2);
  CHECK_FALSE(cox.coprime());
  CHECK(cox.generates);
  CHECK(cox.gcds == std::array<std::uint64_t, 3>{2, 1, 1});

  CHECK_THROWS_AS(verify_witness(a5, cyc(5, "(1 2)"), y), DomainError);
}

TEST_CASE("verify_witness with a character table") {
  const auto g = testgroups::make("A5");
  const auto cc = conjugacy_classes(g);
  const auto t = dixon_table(g, cc);
  const auto x = cyc(5, "(1 2)(3 4)");
  const auto y = cyc(5, "(1 3 5)");
  const auto w = verify_witness(g, x, y, &t, &cc);
  REQUIRE(w.frobenius_count.has_value());
  const auto& cls = *w.classes;
  CHECK(*w.frobenius_count ==
        oracle::pair_products(cc.members(cls[0]), cc.members(cls[1]), x * y));
}

TEST_CASE("search finds coprime triples in simple groups") {
  for (const char* name : {"A5", "PSL2(7)", "A6"}) {
    const auto g = testgroups::make(name);
    const auto res = search_coprime_pair(g);
    REQUIRE_MESSAGE(res.witness.has_value(), name);
    CHECK(res.reason == "found");
    const auto& w = *res.witness;
    CHECK(w.delta == 1);
    CHECK(w.generates);
    // Re-check from scratch.
    CHECK(oracle::closure({w.x, w.y}).size() == g.order());
    CHECK(std::gcd(oracle::naive_order(w.x), oracle::naive_order(w.x * w.y)) == 1);
  }
  const auto a5 = search_coprime_pair(testgroups::make("A5"));
  auto o = a5.witness->orders;
  std::sort(o.begin(), o.end());
  CHECK(o == std::array<std::uint64_t, 3>{2, 3, 5});
}

TEST_CASE("search is deterministic and independent of worker count") {
  const auto g = testgroups::make("A6");
  for (std::uint64_t seed : {1, 2, 99}) {
    SearchOptions one;
    one.seed = seed;
    SearchOptions many = one;
    many.workers = 4;
    const auto a = search_coprime_pair(g, one);
    const auto b = search_coprime_pair(g, many);
    const auto c = search_coprime_pair(g, one);
    REQUIRE(a.witness);
    REQUIRE(b.witness);
    CHECK(a.iterations == b.iterations);
    CHECK(a.witness->x == b.witness->x);
    CHECK(a.witness->y == b.witness->y);
    CHECK(a.witness->x == c.witness->x);
  }
}

TEST_CASE("abelian and trivial groups have no witness") {
  for (std::size_t n = 2; n <= 12; ++n) {
    const auto res = search_coprime_pair(cyclic(n));
    CHECK_FALSE(res.witness);
    CHECK(res.reason == "abelian obstruction");
    CHECK(res.obstruction_delta == n);
  }
  const auto k4 = search_coprime_pair(testgroups::make("C2xC2"));
  CHECK_FALSE(k4.witness);
  CHECK(k4.obstruction_delta == 2);
  const auto triv = search_coprime_pair(PermGroup::trivial(3));
  CHECK_FALSE(triv.witness);
  CHECK(triv.reason == "trivial group");
}

TEST_CASE("budget exhaustion is reported, not mistaken for a proof") {
  SearchOptions opts;
  opts.budget = 300;
  const auto res = search_coprime_pair(testgroups::make("S4"), opts);
  CHECK_FALSE(res.witness);
  CHECK(res.reason == "budget exhausted");
}

TEST_CASE("smooth pairs in SL(2,5)") {
  const auto g = testgroups::sl2(5);
  REQUIRE(g.order() == 120);
  const auto z = center(g);
  REQUIRE(z.order() == 2);
  const Permutation minus_one = z.generators().front();

  CHECK_FALSE(smooth_pair_check(g, z, minus_one, minus_one));
  const auto triv = PermGroup::trivial(g.degree());
  std::mt19937_64 rng(4);
  for (int i = 0; i < 20; ++i) {
    CHECK(smooth_pair_check(g, triv, g.random_element(rng), g.random_element(rng)));
  }
  CHECK_THROWS_AS(smooth_pair_check(g, g, minus_one, minus_one), DomainError);

  SearchOptions opts;
  opts.require_smooth = &z;
  const auto res = search_coprime_pair(g, opts);
  REQUIRE(res.witness);
  const auto& w = *res.witness;
  CHECK(w.generates);
  CHECK(*w.smooth);
  for (auto o : w.orders) CHECK(o % 2 == 1);
  CHECK(oracle::closure({w.x, w.y}).size() == 120);
}

TEST_CASE("alternating witnesses") {
  const std::map<std::size_t, std::array<std::uint64_t, 3>> expected{
      {5, {5, 3, 2}},  {6, {5, 3, 4}},  {7, {7, 5, 3}},   {8, {7, 5, 6}},
      {9, {9, 7, 5}},  {10, {9, 7, 8}}, {11, {11, 9, 7}}, {12, {11, 9, 35}},
  };
  for (const auto& [n, orders] : expected) {
    const auto w = alternating_witness(n);
    CHECK_MESSAGE(w.report.orders == orders, "n = ", n);
    CHECK(w.report.delta == 1);
    CHECK(w.report.generates);
    CHECK(w.conjugation == "A_n");
    const bool odd = n % 2 == 1;
    CHECK(nontrivial_type(w.u) == std::vector<std::size_t>{odd ? n : n - 1});
    CHECK(nontrivial_type(w.v) == std::vector<std::size_t>{odd ? n - 2 : n - 3});
  }
  CHECK(nontrivial_type(alternating_witness(5).u * alternating_witness(5).v) ==
        std::vector<std::size_t>{2, 2});
  CHECK(nontrivial_type(alternating_witness(12).u * alternating_witness(12).v) ==
        std::vector<std::size_t>{5, 7});
  CHECK_THROWS_AS(alternating_witness(4), DomainError);
}

TEST_CASE("Nielsen moves") {
  const PermPair p{cyc(5, "(1 2 3 4 5)"), cyc(5, "(1 2 3)")};
  for (char m : std::string("RrLlI")) {
    const PermPair q = apply_nielsen_move(p, m);
    const char inv = m == 'I' ? 'I' : static_cast<char>(std::isupper(m) ? std::tolower(m) : std::toupper(m));
    CHECK(apply_nielsen_move(q, inv) == p);
  }
  CHECK(apply_nielsen_word(p, "R") == PermPair{p.x, p.x * p.y});
  CHECK_THROWS_AS(apply_nielsen_move(p, 'Q'), ParseError);
}

TEST_CASE("nielsen_equivalent examples") {
  const auto g = testgroups::make("A5");
  const PermPair p{cyc(5, "(1 2 3 4 5)"), cyc(5, "(1 2 3)")};
  const auto same = nielsen_equivalent(g, p, p);
  CHECK(same.verdict == NielsenVerdict::equivalent);
  CHECK(same.certificate.empty());

  const auto one = nielsen_equivalent(g, p, {p.x, p.x * p.y});
  CHECK(one.verdict == NielsenVerdict::equivalent);
  CHECK(one.certificate == "R");

  const auto inv = nielsen_equivalent(g, p, {p.x, p.y.inverse()});
  CHECK(inv.verdict == NielsenVerdict::equivalent);
  CHECK(inv.certificate.size() == 1);
  CHECK(apply_nielsen_word(p, inv.certificate) == PermPair{p.x, p.y.inverse()});

  CHECK_THROWS_AS(nielsen_equivalent(g, p, {p.x, p.x}), DomainError);
}

TEST_CASE("nielsen certificates are valid") {
  const auto g = testgroups::make("A5");
  const PermPair p{cyc(5, "(1 2 3 4 5)"), cyc(5, "(1 2 3)")};
  std::mt19937_64 rng(8);
  const std::string letters = "RrLlI";
  for (int trial = 0; trial < 10; ++trial) {
    std::string word;
    for (int i = 0; i < 8; ++i) word += letters[rng() % letters.size()];
    const PermPair q = apply_nielsen_word(p, word);
    const auto res = nielsen_equivalent(g, p, q);
    REQUIRE(res.verdict == NielsenVerdict::equivalent);
    CHECK(apply_nielsen_word(p, res.certificate) == q);
    CHECK(res.certificate.size() <= word.size());
  }
}

TEST_CASE("nielsen inequivalence via the commutator invariant") {
  // The class of [x, y] up to inversion is invariant under the moves, so
  // generating pairs with commutators of different orders are inequivalent.
  const auto g = testgroups::make("A5");
  const auto elems = oracle::closure(g.generators());
  std::map<std::uint64_t, PermPair> by_commutator_order;
  for (const auto& x : elems) {
    for (const auto& y : elems) {
      const Permutation c = x.inverse() * y.inverse() * x * y;
      const auto o = oracle::naive_order(c);
      if (by_commutator_order.count(o) || oracle::closure({x, y}).size() != 60) continue;
      by_commutator_order.emplace(o, PermPair{x, y});
      if (by_commutator_order.size() >= 2) break;
    }
    if (by_commutator_order.size() >= 2) break;
  }
  REQUIRE(by_commutator_order.size() >= 2);
  const auto a = by_commutator_order.begin()->second;
  const auto b = std::next(by_commutator_order.begin())->second;
  const auto res = nielsen_equivalent(g, a, b);
  CHECK(res.verdict == NielsenVerdict::inequivalent);

  NielsenOptions tight;
  tight.bound = 10;
  CHECK(nielsen_equivalent(g, a, b, tight).verdict == NielsenVerdict::unknown);
}

TEST_CASE("nielsen modulo inner automorphisms") {
  const auto g = testgroups::make("A5");
  const PermPair p{cyc(5, "(1 2 3 4 5)"), cyc(5, "(1 2 3)")};
  const Permutation h = cyc(5, "(1 4)(2 5)");
  const PermPair q = apply_nielsen_word({p.x.conjugate_by(h), p.y.conjugate_by(h)}, "RLLI");
  NielsenOptions opts;
  opts.mod_inn = true;
  const auto res = nielsen_equivalent(g, p, q, opts);
  REQUIRE(res.verdict == NielsenVerdict::equivalent);
  const PermPair image = apply_nielsen_word(p, res.certificate);
  CHECK(canonical_pair(g, image.x, image.y) == canonical_pair(g, q.x, q.y));
}
