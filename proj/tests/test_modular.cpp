#include <doctest.h>

#include <random>

#include "groups.hpp"
#include "mf/error.hpp"
#include "mf/modular.hpp"
#include "oracles.hpp"

using namespace mf;
using oracle::cyc;

namespace {

PermGroup cyclic(std::size_t n) {
  std::vector<Point> img(n);
  for (std::size_t i = 0; i < n; ++i) img[i] = static_cast<Point>((i + 1) % n);
  return PermGroup::from_generators({Permutation(std::move(img))});
}

std::uint64_t brute_generating_pairs(const PermGroup& g) {
  const auto elems = oracle::closure(g.generators());
  std::uint64_t count = 0;
  for (const auto& x : elems)
    for (const auto& y : elems)
      if (oracle::closure({x, y}).size() == elems.size()) ++count;
  return count;
}

std::array<std::int64_t, 4> small(const SL2Matrix& m) {
  return {static_cast<std::int64_t>(m.a), static_cast<std::int64_t>(m.b), static_cast<std::int64_t>(m.c),
          static_cast<std::int64_t>(m.d)};
}

const PermPair kA5Witness{cyc(5, "(1 2 3 4 5)"), cyc(5, "(1 2 3)")};

}  // namespace

TEST_CASE("letters and matrices") {
  CHECK(SL2Matrix::of_word("SSSS") == SL2Matrix{});
  CHECK(SL2Matrix::of_word("SS") == SL2Matrix::of_word("STSTST"));
  CHECK(SL2Matrix::of_word("stS") == SL2Matrix::of_letter('U'));
  for (char l : std::string("STUstu")) {
    CHECK(SL2Matrix::of_letter(l).det() == 1);
    CHECK(SL2Matrix::of_letter(l) * SL2Matrix::of_letter(static_cast<char>(l ^ 0x20)) == SL2Matrix{});
  }
  CHECK_THROWS_AS(SL2Matrix::of_letter('X'), ParseError);
  CHECK(to_string(SL2Matrix::of_letter('S')) == "[[0,-1],[1,0]]");
}

TEST_CASE("generator actions on classes") {
  const auto c2 = cyclic(2);
  const PairCanonicalizer canon2(c2);
  const Permutation g = cyc(2, "(1 2)");
  CHECK(apply_generator(canon2, 'T', {g, g}) == PermPair{g, Permutation(2)});

  const auto a5 = testgroups::make("A5");
  const PairCanonicalizer canon(a5);
  std::mt19937_64 rng(3);
  for (int i = 0; i < 50; ++i) {
    const PermPair p{a5.random_element(rng), a5.random_element(rng)};
    const PermPair c = canon.canonical(p);
    CHECK(apply_word(canon, "SSSS", c) == c);
    CHECK(apply_word(canon, "U", c) == apply_word(canon, "stS", c));
    CHECK(apply_word(canon, "SS", c) == apply_word(canon, "STSTST", c));
    for (char l : std::string("STU")) {
      CHECK(apply_word(canon, std::string{l, static_cast<char>(l ^ 0x20)}, c) == c);
    }
  }
}

TEST_CASE("C2 orbit") {
  const auto c2 = cyclic(2);
  const Permutation g = cyc(2, "(1 2)");
  const auto o = orbit_and_coset_table(c2, {g, Permutation(2)});
  CHECK(o.size() == 3);
  const std::set<PermPair> pts(o.points.begin(), o.points.end());
  CHECK(pts == std::set<PermPair>{{g, Permutation(2)}, {Permutation(2), g}, {g, g}});
  const auto cd = cusp_data(o);
  CHECK(cd.widths == std::vector<std::uint64_t>{1, 2});
  CHECK(cd.level == 2);
  CHECK(cd.base_width == 2);  // T swaps (g,1) and (g,g)
  CHECK(congruence_closure(o).verdict == Verdict::congruence);
}

TEST_CASE("orbit sizes for abelian groups match generating-pair counts") {
  for (std::size_t n = 2; n <= 12; ++n) {
    const auto g = cyclic(n);
    const auto o = orbit_and_coset_table(g, {g.generators()[0], Permutation(n)});
    CHECK_MESSAGE(o.size() == brute_generating_pairs(g), "C", n);
  }
  const auto k4 = testgroups::make("C2xC2");
  const auto o = orbit_and_coset_table(k4, {k4.generators()[0], k4.generators()[1]});
  CHECK(o.size() == brute_generating_pairs(k4));
  CHECK(o.size() == 6);
}

TEST_CASE("orbit structure and relations") {
  for (const char* name : {"S3", "A4", "A5", "PSL2(7)"}) {
    const auto g = testgroups::make(name);
    const PairCanonicalizer canon(g);
    const auto classes = sample_presentation_classes(g, 4, 7);
    for (const auto& c : classes) {
      const auto o = orbit_and_coset_table(g, c);
      CHECK(check_sl2_relations(o));
      CHECK(o.points[0] == canon.canonical(c));
      for (std::size_t i = 0; i < o.size(); ++i) {
        CHECK(canon.canonical(o.points[i]) == o.points[i]);
        CHECK(apply_word(canon, o.word_to(i), o.points[0]) == o.points[i]);
      }
      // T^|x| and U^|y| fix the base point.
      const auto& base = o.points[0];
      CHECK(apply_word(canon, std::string(element_order(base.x), 'T'), base) == base);
      CHECK(apply_word(canon, std::string(element_order(base.y), 'U'), base) == base);
      CHECK(element_order(base.x) % cusp_data(o).base_width == 0);
    }
  }
}

TEST_CASE("A5 witness orbit") {
  const auto a5 = testgroups::make("A5");
  const auto o = orbit_and_coset_table(a5, kA5Witness);
  const auto cd = cusp_data(o);
  CHECK((cd.base_width == 1 || cd.base_width == 5));
  CHECK_THROWS_AS(orbit_and_coset_table(a5, kA5Witness, 3), BoundError);
  CHECK_THROWS_AS(orbit_and_coset_table(a5, {cyc(5, "(1 2 3)"), cyc(5, "(1 3 2)")}), DomainError);
}

TEST_CASE("stabilizer generators") {
  const auto triv = PermGroup::trivial(1);
  const auto o1 = orbit_and_coset_table(triv, {Permutation(1), Permutation(1)});
  CHECK(o1.size() == 1);
  CHECK(cusp_data(o1).widths == std::vector<std::uint64_t>{1});
  CHECK(cusp_data(o1).level == 1);
  CHECK(stabilizer_generators(o1) ==
        std::vector<SL2Matrix>{SL2Matrix::of_letter('S'), SL2Matrix::of_letter('T')});

  for (const char* name : {"S3", "A5"}) {
    const auto g = testgroups::make(name);
    const PairCanonicalizer canon(g);
    for (const auto& c : sample_presentation_classes(g, 3, 1)) {
      const auto o = orbit_and_coset_table(g, c);
      const auto mats = stabilizer_generators(o);
      const auto words = stabilizer_words(o);
      REQUIRE(mats.size() == words.size());
      CHECK(mats.size() <= 2 * o.size());
      CHECK(mats.size() == o.size() + 1);  // 2|orbit| edges minus |orbit| - 1 tree edges
      for (std::size_t i = 0; i < mats.size(); ++i) {
        CHECK(mats[i].det() == 1);
        CHECK(SL2Matrix::of_word(words[i]) == mats[i]);
        CHECK(apply_word(canon, words[i], o.points[0]) == o.points[0]);
      }
    }
  }
}

TEST_CASE("sl2_order") {
  CHECK(sl2_order(1) == 1);
  CHECK(sl2_order(2) == 6);
  CHECK(sl2_order(12) == 1152);
  for (std::uint64_t m = 1; m <= 12; ++m) CHECK(sl2_order(m) == oracle::count_sl2(m));
  CHECK_THROWS_AS(sl2_order(0), DomainError);
}

TEST_CASE("sl2_mod_index examples") {
  const std::vector<SL2Matrix> st{SL2Matrix::of_letter('S'), SL2Matrix::of_letter('T')};
  for (std::uint64_t m = 1; m <= 40; ++m) CHECK(sl2_mod_index(st, m) == 1);
  CHECK(sl2_mod_index({}, 2) == 6);
  CHECK(sl2_mod_index({SL2Matrix::of_letter('T')}, 4) == 12);
  CHECK_THROWS_AS(sl2_mod_index({SL2Matrix{2, 0, 0, 1}}, 5), DomainError);
  IndexOptions tight;
  tight.modulus_cap = 10;
  CHECK_THROWS_AS(sl2_mod_index(st, 11, tight), BoundError);
}

TEST_CASE("sl2_mod_index agrees with brute-force matrix closure") {
  std::mt19937_64 rng(21);
  const std::string letters = "STUstu";
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<SL2Matrix> mats;
    const int k = 1 + static_cast<int>(rng() % 3);
    for (int i = 0; i < k; ++i) {
      std::string w;
      for (int j = 0; j < 1 + static_cast<int>(rng() % 6); ++j) w += letters[rng() % letters.size()];
      mats.push_back(SL2Matrix::of_word(w));
    }
    std::vector<std::array<std::int64_t, 4>> raw;
    for (const auto& m : mats) raw.push_back(small(m));
    for (std::uint64_t m : {2, 3, 4, 5, 6, 8, 9, 10, 12}) {
      const auto brute = sl2_order(m) / oracle::matrix_group_order(raw, static_cast<std::int64_t>(m));
      CHECK_MESSAGE(sl2_mod_index(mats, m) == brute, "m = ", m);
    }
  }
}

TEST_CASE("index is monotone under divisibility and bounded by CRT factors") {
  const auto a5 = testgroups::make("A5");
  const auto o = orbit_and_coset_table(a5, kA5Witness);
  const auto mats = stabilizer_generators(o);
  // Use a subset so the image is proper.
  const std::vector<SL2Matrix> sub(mats.begin(), mats.begin() + 2);
  for (auto [m1, m2] : std::vector<std::pair<std::uint64_t, std::uint64_t>>{{2, 3}, {4, 3}, {3, 5}, {4, 5}}) {
    const auto i1 = sl2_mod_index(sub, m1);
    const auto i2 = sl2_mod_index(sub, m2);
    const auto i12 = sl2_mod_index(sub, m1 * m2);
    CHECK(i12 % i1 == 0);
    CHECK(i12 % i2 == 0);
    CHECK(i12 >= std::max(i1, i2));
  }
}

TEST_CASE("coprime_criterion") {
  const auto a5 = testgroups::make("A5");
  CHECK(coprime_criterion(a5, cyc(5, "(1 2 3 4 5)"), cyc(5, "(1 3 5)") * cyc(5, "()")) ==
        (std::gcd(element_order(cyc(5, "(1 2 3 4 5)") * cyc(5, "(1 3 5)")), 15ULL) == 1));
  const auto w = kA5Witness;
  CHECK(coprime_criterion(a5, w.x, w.y) == (element_order(w.x * w.y) == 2));
  const auto c6 = cyclic(6);
  CHECK_FALSE(coprime_criterion(c6, c6.generators()[0], Permutation(6)));
  CHECK_FALSE(coprime_criterion(testgroups::make("S4"), cyc(4, "(1 2)"), cyc(4, "(1 2 3 4)")));
  CHECK_THROWS_AS(coprime_criterion(a5, cyc(5, "(1 2 3)"), cyc(5, "(1 3 2)")), DomainError);
}

TEST_CASE("classification verdicts") {
  // An A5 pair with orders (5, 3, 2).
  const auto a5 = testgroups::make("A5");
  PermPair coprime;
  for (const auto& c : presentation_classes(a5)) {
    std::array<std::uint64_t, 3> o{element_order(c.x), element_order(c.y), element_order(c.x * c.y)};
    if (o == std::array<std::uint64_t, 3>{5, 3, 2}) {
      coprime = c;
      break;
    }
  }
  REQUIRE(coprime.x.degree() == 5);
  ClassifyOptions audit;
  audit.audit = true;
  const auto r = classify(a5, coprime.x, coprime.y, audit);
  CHECK(*r.criterion_verdict);
  CHECK(r.closure_computed);
  CHECK(r.index_closure == 1);
  CHECK(r.index_gamma > 1);
  CHECK(r.verdict == Verdict::totally_noncongruence);

  const auto fast = classify(a5, coprime.x, coprime.y);
  CHECK_FALSE(fast.closure_computed);
  CHECK(fast.verdict == Verdict::totally_noncongruence);
  CHECK(fast.index_gamma == r.index_gamma);

  const auto c4 = cyclic(4);
  const Permutation g = c4.generators()[0];
  CHECK(classify(c4, g, g).verdict == Verdict::congruence);

  for (const auto& c : presentation_classes(testgroups::make("S3"))) {
    CHECK(classify(testgroups::make("S3"), c.x, c.y).verdict == Verdict::congruence);
  }

  const auto psl = testgroups::make("PSL2(7)");
  for (const auto& c : sample_presentation_classes(psl, 5, 3)) {
    const auto v = classify(psl, c.x, c.y).verdict;
    CHECK(v != Verdict::congruence);
  }
}

TEST_CASE("closure result invariants") {
  for (const char* name : {"S3", "D4", "A4", "A5"}) {
    const auto g = testgroups::make(name);
    for (const auto& c : sample_presentation_classes(g, 3, 11)) {
      const auto r = congruence_closure(orbit_and_coset_table(g, c));
      CHECK(r.index_gamma % r.index_closure == 0);
      CHECK(r.schedule.size() == 4);
      CHECK(r.schedule[0].modulus == r.cusps.level);
      CHECK((r.verdict == Verdict::congruence) == (r.index_closure == r.index_gamma));
    }
  }
}

TEST_CASE("verdict strings") {
  for (Verdict v : {Verdict::congruence, Verdict::noncongruence, Verdict::totally_noncongruence}) {
    CHECK(parse_verdict(to_string(v)) == v);
  }
  CHECK_FALSE(parse_verdict("maybe"));
}
