#include "mf/triples.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <numeric>
#include <random>
#include <thread>

#include "mf/error.hpp"

namespace mf {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t i) {
  return splitmix64(splitmix64(seed) ^ (i + 0x632be59bd9b4e019ULL));
}

std::vector<std::uint64_t> divisors_above_one(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d <= n; ++d) {
    if (n % d == 0) out.push_back(d);
  }
  return out;
}

struct OrderPair {
  std::uint64_t r;
  std::uint64_t s;
};

// Target orders for the powered-down elements, ranked by how often sampled
// element orders are divisible by them.
std::vector<OrderPair> ranked_pairs(const PermGroup& g, std::uint64_t seed, std::uint64_t avoid) {
  std::mt19937_64 rng(stream_seed(seed, ~std::uint64_t{0}));
  std::map<std::uint64_t, std::uint64_t> freq;
  const std::uint64_t samples = std::min<std::uint64_t>(400, 4 * g.order());
  std::map<std::uint64_t, std::vector<std::uint64_t>> divisor_cache;
  for (std::uint64_t i = 0; i < samples; ++i) {
    const std::uint64_t o = element_order(g.random_element(rng));
    auto [it, fresh] = divisor_cache.try_emplace(o);
    if (fresh) it->second = divisors_above_one(o);
    for (auto d : it->second) ++freq[d];
  }
  struct Scored {
    OrderPair p;
    std::uint64_t weight;
  };
  std::vector<Scored> scored;
  for (auto [r, fr] : freq) {
    if (avoid != 0 && std::gcd(r, avoid) != 1) continue;
    for (auto [s, fs] : freq) {
      if (avoid != 0 && std::gcd(s, avoid) != 1) continue;
      if (avoid == 0 && std::gcd(r, s) != 1) continue;
      scored.push_back({{r, s}, fr * fs});
    }
  }
  std::sort(scored.begin(), scored.end(), [](const Scored& a, const Scored& b) {
    if (a.weight != b.weight) return a.weight > b.weight;
    if (a.p.r * a.p.s != b.p.r * b.p.s) return a.p.r * a.p.s > b.p.r * b.p.s;
    return a.p.r > b.p.r;
  });
  std::vector<OrderPair> out;
  for (std::size_t i = 0; i < scored.size() && i < 24; ++i) out.push_back(scored[i].p);
  return out;
}

}  // namespace

TripleWitness verify_witness(const PermGroup& g, const Permutation& x, const Permutation& y,
                             const CharacterTable* table, const ConjClassTable* cc, const PermGroup* z) {
  if (!g.contains(x) || !g.contains(y)) throw DomainError("witness element outside the group");
  TripleWitness w;
  w.x = x;
  w.y = y;
  const Permutation xy = x * y;
  const std::uint64_t r = element_order(x);
  const std::uint64_t s = element_order(y);
  const std::uint64_t t = element_order(xy);
  w.orders = {r, s, t};
  w.gcds = {std::gcd(r, s), std::gcd(r, t), std::gcd(s, t)};
  w.delta = std::gcd(std::gcd(r * s, r * t), s * t);
  w.generates = generates(g, x, y);
  if (table != nullptr && cc != nullptr) {
    const std::array<std::size_t, 3> cls{cc->class_of(x), cc->class_of(y), cc->class_of(xy)};
    w.classes = cls;
    w.frobenius_count = frobenius_count(*table, cls[0], cls[1], cls[2]).count;
  }
  if (z != nullptr) w.smooth = smooth_pair_check(g, *z, x, y);
  return w;
}

bool smooth_pair_check(const PermGroup& g, const PermGroup& z, const Permutation& x,
                       const Permutation& y) {
  for (const Permutation& w : {x, y, x * y}) {
    if (element_order(w) != order_mod_subgroup(g, z, w)) return false;
  }
  return true;
}

SearchResult search_coprime_pair(const PermGroup& g, const SearchOptions& opts) {
  SearchResult res;
  if (g.order() == 1) {
    res.reason = "trivial group";
    return res;
  }
  const PermGroup* z = opts.require_smooth;
  if (z == nullptr && g.is_abelian()) {
    std::uint64_t e = 1;
    for (const auto& s : g.generators()) e = std::lcm(e, element_order(s));
    res.reason = "abelian obstruction";
    res.obstruction_delta = e;
    return res;
  }
  if (z != nullptr) {
    if (!g.centralizes(*z)) throw DomainError("subgroup is not central");
    for (const auto& s : z->generators()) {
      if (!g.contains(s)) throw DomainError("subgroup is not contained in the group");
    }
  }
  const std::uint64_t avoid = z != nullptr ? z->order() : 0;
  const std::vector<OrderPair> pairs = ranked_pairs(g, opts.seed, avoid);
  if (pairs.empty()) {
    res.reason = "budget exhausted";
    res.iterations = opts.budget;
    return res;
  }

  const unsigned workers = std::max(1u, opts.workers);
  std::atomic<std::uint64_t> best{opts.budget};
  std::vector<std::optional<std::pair<std::uint64_t, PermPair>>> hits(workers);

  auto run = [&](unsigned w) {
    for (std::uint64_t i = w; i < best.load(std::memory_order_relaxed); i += workers) {
      const OrderPair target = pairs[i % pairs.size()];
      std::mt19937_64 rng(stream_seed(opts.seed, i));
      Permutation x = g.random_element(rng);
      Permutation y = g.random_element(rng);
      const std::uint64_t ox = element_order(x);
      const std::uint64_t oy = element_order(y);
      if (ox % target.r != 0 || oy % target.s != 0) continue;
      x = x.pow(static_cast<std::int64_t>(ox / target.r));
      y = y.pow(static_cast<std::int64_t>(oy / target.s));
      const std::uint64_t t = element_order(x * y);
      const bool orders_ok = z != nullptr ? std::gcd(t, avoid) == 1 : std::gcd(t, target.r * target.s) == 1;
      if (!orders_ok || !generates(g, x, y)) continue;
      hits[w] = {i, PermPair{std::move(x), std::move(y)}};
      std::uint64_t cur = best.load();
      while (i < cur && !best.compare_exchange_weak(cur, i)) {
      }
      return;
    }
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run, w);
  }

  const std::optional<std::pair<std::uint64_t, PermPair>>* win = nullptr;
  for (const auto& h : hits) {
    if (h && (win == nullptr || h->first < (*win)->first)) win = &h;
  }
  if (win == nullptr) {
    res.reason = "budget exhausted";
    res.iterations = opts.budget;
    return res;
  }
  res.reason = "found";
  res.iterations = (*win)->first + 1;
  res.witness = verify_witness(g, (*win)->second.x, (*win)->second.y, nullptr, nullptr, z);
  if (!res.witness->generates || (z == nullptr && !res.witness->coprime()) ||
      (z != nullptr && !*res.witness->smooth)) {
    throw VerificationError("search produced a witness that fails verification");
  }
  return res;
}

AlternatingWitness alternating_witness(std::size_t n) {
  if (n < 5) throw DomainError("alternating witness needs n >= 5");
  const bool odd = n % 2 == 1;
  // u = (1 2 ... m) with m = n or n - 1; v0 = (1 2 ... k) with k = m - 2.
  const std::size_t m = odd ? n : n - 1;
  const std::size_t k = m - 2;
  auto cycle_on_prefix = [n](std::size_t len) {
    std::vector<Point> img(n);
    std::iota(img.begin(), img.end(), Point{0});
    for (std::size_t i = 0; i < len; ++i) img[i] = static_cast<Point>((i + 1) % len);
    return Permutation(std::move(img));
  };
  const Permutation u = cycle_on_prefix(m);
  const Permutation v0 = cycle_on_prefix(k);

  std::vector<std::size_t> target;
  if (n == 5) {
    target = {2, 2};
  } else if (odd) {
    target = {n - 4};
  } else if (n % 5 == 2 || n % 5 == 4) {
    target = {5, n - 5};
  } else {
    target = {2, n - 2};
  }
  std::sort(target.begin(), target.end());

  const PermGroup an = alternating_group(n);
  auto nontrivial_type = [](const Permutation& p) {
    std::vector<std::size_t> t;
    for (auto len : p.cycle_lengths()) {
      if (len > 1) t.push_back(len);
    }
    std::sort(t.begin(), t.end());
    return t;
  };
  auto parity = [n](const Permutation& p) { return (n - p.cycle_lengths().size()) % 2; };

  for (std::size_t pass = 0; pass < 2; ++pass) {
    std::vector<Point> h(n);
    std::iota(h.begin(), h.end(), Point{0});
    do {
      const Permutation hp = PermBuilder::adopt(h);
      if (parity(hp) != pass) continue;
      const Permutation v = v0.conjugate_by(hp);
      if (nontrivial_type(u * v) != target) continue;
      if (!generates(an, u, v)) continue;
      AlternatingWitness w{u, v, hp, pass == 0 ? "A_n" : "S_n", verify_witness(an, u, v)};
      if (!w.report.generates || !w.report.coprime()) {
        throw VerificationError("alternating witness fails verification");
      }
      return w;
    } while (std::next_permutation(h.begin(), h.end()));
  }
  throw VerificationError("no conjugate of v gives the target product class");
}

std::string_view to_string(NielsenVerdict v) {
  switch (v) {
    case NielsenVerdict::equivalent:
      return "equivalent";
    case NielsenVerdict::inequivalent:
      return "inequivalent-within-bound";
    case NielsenVerdict::unknown:
      break;
  }
  return "unknown";
}

PermPair apply_nielsen_move(const PermPair& p, char move) {
  switch (move) {
    case 'R':
      return {p.x, p.x * p.y};
    case 'r':
      return {p.x, p.x.inverse() * p.y};
    case 'L':
      return {p.x * p.y, p.y};
    case 'l':
      return {p.x * p.y.inverse(), p.y};
    case 'I':
      return {p.x, p.y.inverse()};
    default:
      throw ParseError(std::string("unknown Nielsen move '") + move + "'");
  }
}

PermPair apply_nielsen_word(const PermPair& p, std::string_view word) {
  PermPair q = p;
  for (char c : word) {
    if (c == ' ') continue;
    q = apply_nielsen_move(q, c);
  }
  return q;
}

namespace {

constexpr std::string_view kMoves = "RrLlI";

char inverse_move(char m) {
  switch (m) {
    case 'R':
      return 'r';
    case 'r':
      return 'R';
    case 'L':
      return 'l';
    case 'l':
      return 'L';
    default:
      return m;
  }
}

struct Side {
  struct Node {
    PermPair pair;
    std::int64_t parent;
    char move;
  };
  std::vector<Node> nodes;
  std::unordered_map<PermPair, std::size_t, PermPairHash> index;
  std::size_t frontier_begin = 0;

  explicit Side(PermPair root) {
    index.emplace(root, 0);
    nodes.push_back({std::move(root), -1, 0});
  }
  // Moves from the root to node i.
  std::string path(std::size_t i) const {
    std::string w;
    for (auto j = static_cast<std::int64_t>(i); nodes[j].parent >= 0; j = nodes[j].parent) w += nodes[j].move;
    std::reverse(w.begin(), w.end());
    return w;
  }
};

}  // namespace

NielsenResult nielsen_equivalent(const PermGroup& g, const PermPair& p1, const PermPair& p2,
                                 const NielsenOptions& opts) {
  if (!generates(g, p1.x, p1.y) || !generates(g, p2.x, p2.y)) {
    throw DomainError("Nielsen equivalence needs generating pairs");
  }
  std::optional<PairCanonicalizer> canon;
  if (opts.mod_inn) canon.emplace(g);
  auto normal = [&](PermPair p) { return canon ? canon->canonical(p) : p; };

  NielsenResult res;
  std::array<Side, 2> sides{Side(normal(p1)), Side(normal(p2))};
  if (sides[0].nodes[0].pair == sides[1].nodes[0].pair) {
    res.verdict = NielsenVerdict::equivalent;
    res.explored = 1;
    return res;
  }
  res.explored = 2;

  auto certificate = [&](std::size_t a, std::size_t b) {
    std::string w = sides[0].path(a);
    const std::string back = sides[1].path(b);
    for (auto it = back.rbegin(); it != back.rend(); ++it) w += inverse_move(*it);
    return w;
  };

  while (true) {
    // Expand the side with the smaller frontier by one full layer.
    const auto frontier = [&](int s) { return sides[s].nodes.size() - sides[s].frontier_begin; };
    const int s = frontier(0) <= frontier(1) ? 0 : 1;
    Side& me = sides[s];
    const Side& other = sides[1 - s];
    const std::size_t end = me.nodes.size();
    if (me.frontier_begin == end) {
      res.verdict = NielsenVerdict::inequivalent;
      return res;
    }
    for (std::size_t i = me.frontier_begin; i < end; ++i) {
      for (char mv : kMoves) {
        PermPair q = normal(apply_nielsen_move(me.nodes[i].pair, mv));
        if (me.index.count(q) != 0) continue;
        if (opts.check_generation && !generates(g, q.x, q.y)) {
          throw VerificationError("Nielsen move produced a non-generating pair");
        }
        const std::size_t idx = me.nodes.size();
        me.index.emplace(q, idx);
        me.nodes.push_back({q, static_cast<std::int64_t>(i), mv});
        ++res.explored;
        if (const auto hit = other.index.find(q); hit != other.index.end()) {
          res.verdict = NielsenVerdict::equivalent;
          res.certificate = s == 0 ? certificate(idx, hit->second) : certificate(hit->second, idx);
          return res;
        }
        if (res.explored >= opts.bound) {
          res.verdict = NielsenVerdict::unknown;
          return res;
        }
      }
    }
    me.frontier_begin = end;
  }
}

}  // namespace mf
