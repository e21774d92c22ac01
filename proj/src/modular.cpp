#include "mf/modular.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <unordered_map>

#include "mf/error.hpp"

namespace mf {

PermPair act_on_pair(char letter, const PermPair& p) {
  switch (letter) {
    case 'S':
      return {p.y, p.x.inverse()};
    case 's':
      return {p.y.inverse(), p.x};
    case 'T':
      return {p.x, p.x * p.y};
    case 't':
      return {p.x, p.x.inverse() * p.y};
    case 'U':
      return {p.x * p.y, p.y};
    case 'u':
      return {p.x * p.y.inverse(), p.y};
    default:
      throw ParseError(std::string("unknown SL2 letter '") + letter + "'");
  }
}

PermPair apply_generator(const PairCanonicalizer& canon, char letter, const PermPair& c) {
  return canon.canonical(act_on_pair(letter, c));
}

PermPair apply_word(const PairCanonicalizer& canon, std::string_view word, const PermPair& c) {
  PermPair p = canon.canonical(c);
  for (char l : word) p = apply_generator(canon, l, p);
  return p;
}

SL2Matrix SL2Matrix::of_letter(char letter) {
  switch (letter) {
    case 'S':
      return {0, -1, 1, 0};
    case 's':
      return {0, 1, -1, 0};
    case 'T':
      return {1, 1, 0, 1};
    case 't':
      return {1, -1, 0, 1};
    case 'U':
      return {1, 0, 1, 1};
    case 'u':
      return {1, 0, -1, 1};
    default:
      throw ParseError(std::string("unknown SL2 letter '") + letter + "'");
  }
}

SL2Matrix SL2Matrix::of_word(std::string_view word) {
  SL2Matrix m;
  for (char l : word) m = m * of_letter(l);
  return m;
}

SL2Matrix operator*(const SL2Matrix& x, const SL2Matrix& y) {
  return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}

std::string to_string(const SL2Matrix& m) {
  return "[[" + m.a.str() + "," + m.b.str() + "],[" + m.c.str() + "," + m.d.str() + "]]";
}

namespace {

char invert_letter(char l) { return static_cast<char>(l ^ 0x20); }  // S <-> s, T <-> t, U <-> u

std::string inverse_word(std::string_view w) {
  std::string out;
  for (auto it = w.rbegin(); it != w.rend(); ++it) out += invert_letter(*it);
  return out;
}

using Table = std::vector<std::uint32_t>;

Table compose(const Table& a, const Table& b) {
  Table r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = b[a[i]];
  return r;
}

}  // namespace

std::string ModularOrbit::word_to(std::size_t i) const {
  std::string w;
  for (auto j = static_cast<std::int64_t>(i); parent[j] >= 0; j = parent[j]) w += edge[j];
  std::reverse(w.begin(), w.end());
  return w;
}

ModularOrbit orbit_and_coset_table(const PermGroup& g, const PermPair& base, std::uint64_t max_points) {
  if (!generates(g, base.x, base.y)) throw DomainError("base pair does not generate the group");
  const PairCanonicalizer canon(g);
  ModularOrbit o;
  o.group = &g;
  std::unordered_map<PermPair, std::uint32_t, PermPairHash> index;
  auto intern = [&](PermPair p, std::int64_t parent, char edge) {
    const auto [it, fresh] = index.emplace(p, static_cast<std::uint32_t>(o.points.size()));
    if (fresh) {
      if (o.points.size() >= max_points) {
        throw BoundError("modular orbit exceeds " + std::to_string(max_points) + " points");
      }
      o.points.push_back(std::move(p));
      o.parent.push_back(parent);
      o.edge.push_back(edge);
    }
    return it->second;
  };
  intern(canon.canonical(base), -1, 0);
  for (std::size_t i = 0; i < o.points.size(); ++i) {
    const PermPair p = o.points[i];
    const auto s = intern(apply_generator(canon, 'S', p), static_cast<std::int64_t>(i), 'S');
    const auto t = intern(apply_generator(canon, 'T', p), static_cast<std::int64_t>(i), 'T');
    o.sigma_s.push_back(s);
    o.sigma_t.push_back(t);
  }
  if (!check_sl2_relations(o)) throw VerificationError("SL2(Z) relations fail on the orbit");
  return o;
}

bool check_sl2_relations(const ModularOrbit& o) {
  const Table& s = o.sigma_s;
  const Table& t = o.sigma_t;
  const Table s2 = compose(s, s);
  Table id(s.size());
  std::iota(id.begin(), id.end(), 0u);
  if (compose(s2, s2) != id) return false;
  const Table st = compose(s, t);
  if (compose(compose(st, st), st) != s2) return false;
  return compose(s2, t) == compose(t, s2);
}

CuspData cusp_data(const ModularOrbit& o) {
  CuspData cd;
  std::vector<bool> seen(o.size(), false);
  for (std::size_t i = 0; i < o.size(); ++i) {
    if (seen[i]) continue;
    std::uint64_t len = 0;
    for (std::size_t j = i; !seen[j]; j = o.sigma_t[j]) {
      seen[j] = true;
      ++len;
    }
    if (i == 0) cd.base_width = len;
    cd.widths.push_back(len);
    cd.level = std::lcm(cd.level, len);
  }
  std::sort(cd.widths.begin(), cd.widths.end());
  return cd;
}

namespace {

bool is_tree_edge(const ModularOrbit& o, std::size_t p, char letter, std::size_t q) {
  return o.parent[q] == static_cast<std::int64_t>(p) && o.edge[q] == letter;
}

}  // namespace

std::vector<SL2Matrix> stabilizer_generators(const ModularOrbit& o) {
  std::vector<SL2Matrix> w(o.size());
  for (std::size_t i = 1; i < o.size(); ++i) {
    w[i] = w[static_cast<std::size_t>(o.parent[i])] * SL2Matrix::of_letter(o.edge[i]);
  }
  std::vector<SL2Matrix> gens;
  for (std::size_t p = 0; p < o.size(); ++p) {
    for (char letter : {'S', 'T'}) {
      const std::size_t q = letter == 'S' ? o.sigma_s[p] : o.sigma_t[p];
      if (is_tree_edge(o, p, letter, q)) continue;
      gens.push_back(w[p] * SL2Matrix::of_letter(letter) * w[q].inverse());
    }
  }
  return gens;
}

std::vector<std::string> stabilizer_words(const ModularOrbit& o) {
  std::vector<std::string> words;
  for (std::size_t p = 0; p < o.size(); ++p) {
    for (char letter : {'S', 'T'}) {
      const std::size_t q = letter == 'S' ? o.sigma_s[p] : o.sigma_t[p];
      if (is_tree_edge(o, p, letter, q)) continue;
      words.push_back(o.word_to(p) + letter + inverse_word(o.word_to(q)));
    }
  }
  return words;
}

std::uint64_t sl2_order(std::uint64_t m) {
  if (m == 0) throw DomainError("modulus must be positive");
  unsigned __int128 r = static_cast<unsigned __int128>(m) * m * m;
  for (auto [p, e] : factor_small(m)) r = r / (p * p) * (p * p - 1);
  if (r > static_cast<unsigned __int128>(UINT64_MAX)) throw BoundError("|SL2(Z/m)| exceeds 64 bits");
  return static_cast<std::uint64_t>(r);
}

namespace {

std::uint64_t reduce_mod(const Integer& v, std::uint64_t q) {
  Integer r = v % q;
  if (r < 0) r += q;
  return static_cast<std::uint64_t>(r);
}

// Primitive row vectors of (Z/q)^2, q a prime power p^k.
struct PrimitiveVectors {
  std::uint64_t q;
  std::vector<std::int64_t> index;  // a * q + b -> point, or -1
  std::vector<std::pair<std::uint64_t, std::uint64_t>> points;

  PrimitiveVectors(std::uint64_t p, std::uint64_t qq) : q(qq), index(qq * qq, -1) {
    for (std::uint64_t a = 0; a < q; ++a) {
      for (std::uint64_t b = 0; b < q; ++b) {
        if (a % p == 0 && b % p == 0) continue;
        index[a * q + b] = static_cast<std::int64_t>(points.size());
        points.emplace_back(a, b);
      }
    }
  }

  // Images of v -> vM, written at offset in img.
  void act(const SL2Matrix& m, std::vector<Point>& img, std::size_t offset) const {
    const std::uint64_t a = reduce_mod(m.a, q), b = reduce_mod(m.b, q);
    const std::uint64_t c = reduce_mod(m.c, q), d = reduce_mod(m.d, q);
    for (std::size_t i = 0; i < points.size(); ++i) {
      const auto [x, y] = points[i];
      const std::uint64_t u = (x * a + y * c) % q;
      const std::uint64_t v = (x * b + y * d) % q;
      img[offset + i] = static_cast<Point>(offset + static_cast<std::size_t>(index[u * q + v]));
    }
  }
};

std::uint64_t image_order(const std::vector<const PrimitiveVectors*>& blocks,
                          const std::vector<SL2Matrix>& mats) {
  std::size_t n = 0;
  for (const auto* b : blocks) n += b->points.size();
  std::set<Permutation> perms;
  for (const auto& m : mats) {
    std::vector<Point> img(n);
    std::size_t offset = 0;
    for (const auto* b : blocks) {
      b->act(m, img, offset);
      offset += b->points.size();
    }
    Permutation p = PermBuilder::adopt(std::move(img));
    if (!p.is_identity()) perms.insert(std::move(p));
  }
  const std::vector<Permutation> list(perms.begin(), perms.end());
  return subgroup_generated(n, list).order();
}

}  // namespace

std::uint64_t sl2_mod_index(const std::vector<SL2Matrix>& mats, std::uint64_t m, const IndexOptions& opts) {
  if (m == 0) throw DomainError("modulus must be positive");
  if (m > opts.modulus_cap) {
    throw BoundError("modulus " + std::to_string(m) + " exceeds cap " + std::to_string(opts.modulus_cap));
  }
  if (m == 1) return 1;
  for (const auto& x : mats) {
    if (reduce_mod(x.det(), m) != 1) throw DomainError("matrix determinant is not 1 mod " + std::to_string(m));
  }
  std::vector<PrimitiveVectors> blocks;
  for (auto [p, e] : factor_small(m)) {
    std::uint64_t q = 1;
    for (unsigned i = 0; i < e; ++i) q *= p;
    if (q * q > opts.max_block_points) {
      throw BoundError("prime-power block " + std::to_string(q) + " exceeds the point budget");
    }
    blocks.emplace_back(p, q);
  }
  bool all_full = true;
  for (const auto& b : blocks) {
    if (image_order({&b}, mats) != sl2_order(b.q)) {
      all_full = false;
      break;
    }
  }
  // Full images in every block give the full group: the blocks share no
  // nontrivial common quotient.
  if (all_full) return 1;
  std::vector<const PrimitiveVectors*> ptrs;
  for (const auto& b : blocks) ptrs.push_back(&b);
  const std::uint64_t order = image_order(ptrs, mats);
  const std::uint64_t full = sl2_order(m);
  if (full % order != 0) throw VerificationError("image order does not divide |SL2(Z/m)|");
  return full / order;
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::congruence:
      return "congruence";
    case Verdict::noncongruence:
      return "noncongruence";
    case Verdict::totally_noncongruence:
      return "totally-noncongruence";
  }
  return "?";
}

std::optional<Verdict> parse_verdict(std::string_view s) {
  for (Verdict v : {Verdict::congruence, Verdict::noncongruence, Verdict::totally_noncongruence}) {
    if (to_string(v) == s) return v;
  }
  return std::nullopt;
}

namespace {

Verdict verdict_of(std::uint64_t index_gamma, std::uint64_t index_closure) {
  if (index_closure == index_gamma) return Verdict::congruence;
  if (index_closure == 1) return Verdict::totally_noncongruence;
  return Verdict::noncongruence;
}

}  // namespace

ClosureResult congruence_closure(const ModularOrbit& o, const IndexOptions& opts) {
  ClosureResult r;
  r.index_gamma = o.size();
  r.cusps = cusp_data(o);
  const std::uint64_t n = r.cusps.level;
  const auto gens = stabilizer_generators(o);
  for (std::uint64_t f : {1, 2, 4, 6}) {
    const std::uint64_t idx = sl2_mod_index(gens, f * n, opts);
    if (r.index_gamma % idx != 0) throw VerificationError("closure index does not divide the orbit size");
    r.schedule.push_back({f * n, idx});
  }
  const auto& s = r.schedule;
  if (s[1].index % s[0].index != 0 || s[2].index % s[1].index != 0 || s[3].index % s[1].index != 0) {
    throw VerificationError("closure indices are not monotone along the schedule");
  }
  if (s[1].index != s[2].index || s[2].index != s[3].index) {
    throw InconclusiveError("closure index did not stabilize over moduli " + std::to_string(n) + ", " +
                            std::to_string(2 * n) + ", " + std::to_string(4 * n) + ", " +
                            std::to_string(6 * n));
  }
  r.closure_computed = true;
  r.index_closure = s[1].index;
  r.closure_n_sufficed = s[0].index == s[1].index;
  r.modulus_used = r.closure_n_sufficed ? n : 2 * n;
  r.verdict = verdict_of(r.index_gamma, r.index_closure);
  return r;
}

bool coprime_criterion(const PermGroup& g, const Permutation& x, const Permutation& y) {
  if (!generates(g, x, y)) throw DomainError("pair does not generate the group");
  if (g.order() <= 1) return false;
  const std::uint64_t a = element_order(x), b = element_order(y), c = element_order(x * y);
  return std::gcd(a, b) == 1 && std::gcd(a, c) == 1 && std::gcd(b, c) == 1;
}

ClosureResult classify(const PermGroup& g, const Permutation& x, const Permutation& y,
                       const ClassifyOptions& opts) {
  const bool criterion = coprime_criterion(g, x, y);
  const ModularOrbit o = orbit_and_coset_table(g, {x, y}, opts.max_orbit);
  ClosureResult r;
  if (criterion && !opts.audit) {
    r.index_gamma = o.size();
    r.cusps = cusp_data(o);
    if (r.index_gamma <= 1) throw VerificationError("coprime criterion holds but the stabilizer is everything");
    r.index_closure = 1;
    r.verdict = Verdict::totally_noncongruence;
  } else {
    r = congruence_closure(o, opts.index);
    if (criterion && r.verdict != Verdict::totally_noncongruence) {
      throw VerificationError("closure pipeline disagrees with the coprime criterion");
    }
  }
  r.criterion_verdict = criterion;
  return r;
}

std::vector<PermPair> presentation_classes(const PermGroup& g) {
  if (g.order() > 5000) throw BoundError("exhaustive presentation enumeration is limited to |G| <= 5000");
  const PairCanonicalizer canon(g);
  const auto elems = g.elements();
  std::set<PermPair> seen;
  std::vector<PermPair> out;
  for (const auto& x : elems) {
    for (const auto& y : elems) {
      PermPair c = canon.canonical({x, y});
      if (!seen.insert(c).second) continue;
      if (generates(g, c.x, c.y)) out.push_back(std::move(c));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<PermPair> sample_presentation_classes(const PermGroup& g, std::size_t count, std::uint64_t seed) {
  const PairCanonicalizer canon(g);
  std::mt19937_64 rng(seed);
  std::set<PermPair> seen;
  std::vector<PermPair> out;
  const std::uint64_t attempts = 1000 * static_cast<std::uint64_t>(count) + 1000;
  for (std::uint64_t i = 0; i < attempts && out.size() < count; ++i) {
    const Permutation x = g.random_element(rng);
    const Permutation y = g.random_element(rng);
    if (!generates(g, x, y)) continue;
    PermPair c = canon.canonical({x, y});
    if (seen.insert(c).second) out.push_back(std::move(c));
  }
  return out;
}

}  // namespace mf
