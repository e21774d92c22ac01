#include "mf/catalog.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <chrono>
#include <fstream>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>
#include <thread>

#include "mf/error.hpp"
#include "mf/ppd.hpp"

namespace mf {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::optional<std::uint64_t> to_u64(std::string_view s) {
  s = trim(s);
  std::uint64_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

std::uint64_t parse_param(std::string_view s, std::string_view whole) {
  auto v = to_u64(s);
  if (!v) throw ParseError("bad group parameter in '" + std::string(whole) + "'");
  return *v;
}

// Splits on 'x' outside parentheses.
std::vector<std::string_view> split_product(std::string_view s) {
  std::vector<std::string_view> parts;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '(') ++depth;
    if (s[i] == ')') --depth;
    if (s[i] == 'x' && depth == 0) {
      parts.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  parts.push_back(s.substr(start));
  return parts;
}

GroupSpec parse_atom(std::string_view s) {
  GroupSpec g;
  auto paren = [&](std::string_view prefix) -> std::optional<std::uint64_t> {
    if (!s.starts_with(prefix) || !s.ends_with(")")) return std::nullopt;
    return parse_param(s.substr(prefix.size(), s.size() - prefix.size() - 1), s);
  };
  if (auto p = paren("PSL2(")) {
    g.kind = GroupSpec::Kind::psl2;
    g.param = *p;
  } else if (auto q = paren("SL2(")) {
    g.kind = GroupSpec::Kind::sl2;
    g.param = *q;
  } else if (s == "Q8") {
    g.kind = GroupSpec::Kind::quaternion;
    g.param = 8;
  } else if (s.size() >= 2 && std::string_view("ASCD").find(s[0]) != std::string_view::npos) {
    static const std::map<char, GroupSpec::Kind> kinds{{'A', GroupSpec::Kind::alternating},
                                                       {'S', GroupSpec::Kind::symmetric},
                                                       {'C', GroupSpec::Kind::cyclic},
                                                       {'D', GroupSpec::Kind::dihedral}};
    g.kind = kinds.at(s[0]);
    g.param = parse_param(s.substr(1), s);
  } else {
    throw ParseError("unknown group name '" + std::string(s) + "'");
  }
  return g;
}

void check_bound(std::uint64_t v, std::uint64_t cap, const GroupSpec& spec) {
  if (v > cap) {
    throw BoundError(spec.id() + ": parameter exceeds the catalog bound " + std::to_string(cap));
  }
}

Permutation from_images(std::vector<Point> img) { return Permutation(std::move(img)); }

PermGroup cyclic_group(std::size_t n) {
  if (n == 1) return PermGroup::from_generators({Permutation(1)});
  std::vector<Point> img(n);
  for (std::size_t i = 0; i < n; ++i) img[i] = static_cast<Point>((i + 1) % n);
  return PermGroup::from_generators({from_images(std::move(img))});
}

// Symmetries of the n-gon: rotation i -> i+1 and reflection i -> -i.
PermGroup dihedral_group(std::size_t n) {
  std::vector<Point> rot(n), ref(n);
  for (std::size_t i = 0; i < n; ++i) {
    rot[i] = static_cast<Point>((i + 1) % n);
    ref[i] = static_cast<Point>((n - i) % n);
  }
  return PermGroup::from_generators({from_images(std::move(rot)), from_images(std::move(ref))});
}

// Right regular representation of Q8 = {+-1, +-i, +-j, +-k}.
PermGroup quaternion_group() {
  // Element e = 2*u + s, u in {1, i, j, k} as 0..3, s the sign bit.
  static const int unit[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static const int sign[4][4] = {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
  auto mul = [](int a, int b) {
    const int u = unit[a / 2][b / 2];
    const int s = (a % 2) ^ (b % 2) ^ sign[a / 2][b / 2];
    return 2 * u + s;
  };
  auto right = [&](int g) {
    std::vector<Point> img(8);
    for (int a = 0; a < 8; ++a) img[a] = static_cast<Point>(mul(a, g));
    return from_images(std::move(img));
  };
  return PermGroup::from_generators({right(2), right(4)});
}

std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t p) { return powmod64(a, p - 2, p); }

// Projective line: points 0..p-1 are field elements, p is infinity.
PermGroup psl2_group(std::uint64_t p) {
  const std::size_t n = p + 1;
  std::vector<Point> t(n), w(n);
  for (std::uint64_t z = 0; z < p; ++z) {
    t[z] = static_cast<Point>((z + 1) % p);
    w[z] = static_cast<Point>(z == 0 ? p : (p - inverse_mod(z, p)) % p);
  }
  t[p] = static_cast<Point>(p);
  w[p] = 0;
  return PermGroup::from_generators({from_images(std::move(t)), from_images(std::move(w))});
}

// Nonzero row vectors (a, b) at index a*p + b - 1, acted on by v -> vM.
PermGroup sl2_group(std::uint64_t p) {
  auto index = [p](std::uint64_t a, std::uint64_t b) { return static_cast<Point>(a * p + b - 1); };
  auto act = [&](std::uint64_t m00, std::uint64_t m01, std::uint64_t m10, std::uint64_t m11) {
    std::vector<Point> img(p * p - 1);
    for (std::uint64_t a = 0; a < p; ++a)
      for (std::uint64_t b = 0; b < p; ++b) {
        if (a == 0 && b == 0) continue;
        img[index(a, b)] = index((a * m00 + b * m10) % p, (a * m01 + b * m11) % p);
      }
    return from_images(std::move(img));
  };
  return PermGroup::from_generators({act(1, 1, 0, 1), act(0, p - 1, 1, 0)});
}

PermGroup direct_product(const std::vector<PermGroup>& parts) {
  std::size_t degree = 0;
  for (const auto& g : parts) degree += g.degree();
  std::vector<Permutation> gens;
  std::size_t offset = 0;
  for (const auto& g : parts) {
    for (const auto& s : g.generators()) {
      std::vector<Point> img(degree);
      std::iota(img.begin(), img.end(), Point{0});
      for (std::size_t i = 0; i < g.degree(); ++i) img[offset + i] = static_cast<Point>(offset + s[i]);
      gens.push_back(from_images(std::move(img)));
    }
    offset += g.degree();
  }
  return gens.empty() ? PermGroup::trivial(degree) : PermGroup::from_generators(std::move(gens));
}

std::uint64_t factorial(std::uint64_t n) {
  std::uint64_t f = 1;
  for (std::uint64_t i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace

GroupSpec GroupSpec::parse(std::string_view text) {
  text = trim(text);
  if (text.empty()) throw ParseError("empty group name");
  if (text.starts_with("file:")) {
    GroupSpec g;
    g.kind = Kind::file;
    g.path = std::string(text.substr(5));
    if (g.path.empty()) throw ParseError("file: needs a path");
    return g;
  }
  const auto parts = split_product(text);
  if (parts.size() == 1) return parse_atom(text);
  GroupSpec g;
  g.kind = Kind::product;
  for (auto p : parts) {
    if (p.empty()) throw ParseError("empty factor in '" + std::string(text) + "'");
    g.factors.push_back(parse_atom(p));
  }
  return g;
}

std::string GroupSpec::id() const {
  const std::string n = std::to_string(param);
  switch (kind) {
    case Kind::alternating: return "A" + n;
    case Kind::symmetric: return "S" + n;
    case Kind::cyclic: return "C" + n;
    case Kind::dihedral: return "D" + n;
    case Kind::quaternion: return "Q8";
    case Kind::psl2: return "PSL2(" + n + ")";
    case Kind::sl2: return "SL2(" + n + ")";
    case Kind::file: return "file:" + path;
    case Kind::product: {
      std::string s;
      for (const auto& f : factors) s += (s.empty() ? "" : "x") + f.id();
      return s;
    }
  }
  return {};
}

std::optional<std::uint64_t> expected_order(const GroupSpec& spec) {
  const std::uint64_t n = spec.param;
  switch (spec.kind) {
    case GroupSpec::Kind::alternating: return n < 2 ? 1 : factorial(n) / 2;
    case GroupSpec::Kind::symmetric: return factorial(n);
    case GroupSpec::Kind::cyclic: return n;
    case GroupSpec::Kind::dihedral: return 2 * n;
    case GroupSpec::Kind::quaternion: return 8;
    case GroupSpec::Kind::psl2: return n * (n * n - 1) / std::gcd<std::uint64_t>(2, n - 1);
    case GroupSpec::Kind::sl2: return n * (n * n - 1);
    case GroupSpec::Kind::file: return std::nullopt;
    case GroupSpec::Kind::product: {
      std::uint64_t o = 1;
      for (const auto& f : spec.factors) {
        auto fo = expected_order(f);
        if (!fo) return std::nullopt;
        o *= *fo;
      }
      return o;
    }
  }
  return std::nullopt;
}

PermGroup build(const GroupSpec& spec, const CatalogBounds& bounds) {
  using K = GroupSpec::Kind;
  switch (spec.kind) {
    case K::alternating:
    case K::symmetric:
    case K::cyclic:
    case K::dihedral: {
      check_bound(spec.param, bounds.max_n, spec);
      if (spec.param == 0) throw DomainError(spec.id() + ": parameter must be positive");
      if (spec.kind == K::dihedral && spec.param < 3) throw DomainError("dihedral groups need n >= 3");
      if (spec.kind == K::cyclic) return cyclic_group(spec.param);
      if (spec.kind == K::dihedral) return dihedral_group(spec.param);
      if (spec.param < 2) return PermGroup::from_generators({Permutation(spec.param)});
      return spec.kind == K::alternating ? alternating_group(spec.param) : symmetric_group(spec.param);
    }
    case K::quaternion: return quaternion_group();
    case K::psl2:
    case K::sl2:
      check_bound(spec.param, bounds.max_p, spec);
      if (!is_prime64(spec.param)) throw DomainError(spec.id() + ": p must be prime");
      return spec.kind == K::psl2 ? psl2_group(spec.param) : sl2_group(spec.param);
    case K::product: {
      std::vector<PermGroup> parts;
      for (const auto& f : spec.factors) parts.push_back(build(f, bounds));
      return direct_product(parts);
    }
    case K::file: return read_group_file(std::filesystem::path(spec.path));
  }
  throw DomainError("unknown group kind");
}

void write_group_file(std::ostream& out, const PermGroup& g) {
  out << "degree " << g.degree() << '\n';
  for (const auto& s : g.generators()) out << s.to_cycles() << '\n';
}

void write_group_file(const std::filesystem::path& path, const PermGroup& g) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  write_group_file(out, g);
}

PermGroup read_group_file(std::istream& in) {
  std::string raw;
  std::size_t line = 0;
  std::optional<std::size_t> degree;
  std::vector<Permutation> gens;
  while (std::getline(in, raw)) {
    ++line;
    std::string_view s = raw;
    if (auto h = s.find('#'); h != std::string_view::npos) s = s.substr(0, h);
    s = trim(s);
    if (s.empty()) continue;
    if (!degree) {
      if (!s.starts_with("degree")) throw ParseError("expected 'degree N'", line);
      auto d = to_u64(s.substr(6));
      if (!d || *d == 0) throw ParseError("bad degree", line);
      degree = *d;
      continue;
    }
    try {
      gens.push_back(Permutation::from_cycles(*degree, s));
    } catch (const Error& e) {
      throw ParseError(e.what(), line);
    }
  }
  if (!degree) throw ParseError("missing 'degree N' header", line + 1);
  return gens.empty() ? PermGroup::trivial(*degree) : PermGroup::from_generators(std::move(gens));
}

PermGroup read_group_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open group file " + path.string());
  return read_group_file(in);
}

// ---------------------------------------------------------------------------
// Reports

ClassificationReport make_classification_report(const std::string& group_id, const PermPair& pair,
                                                const ClosureResult& r) {
  ClassificationReport c;
  c.group = group_id;
  c.degree = pair.x.degree();
  c.pair = format_pair(pair);
  c.orders = {element_order(pair.x), element_order(pair.y), element_order(pair.x * pair.y)};
  const auto [a, b, t] = c.orders;
  c.delta = std::gcd(std::gcd(a * b, a * t), b * t);
  c.index_gamma = r.index_gamma;
  c.cusp_widths = r.cusps.widths;
  c.level = r.cusps.level;
  c.schedule = r.schedule;
  c.modulus_used = r.modulus_used;
  c.index_closure = r.index_closure;
  c.closure_computed = r.closure_computed;
  c.verdict = r.verdict;
  c.criterion_verdict = r.criterion_verdict;
  return c;
}

WitnessReport make_witness_report(const std::string& group_id, const PermGroup& g, const TripleWitness& w) {
  WitnessReport r;
  r.group = group_id;
  r.degree = g.degree();
  for (const auto& s : g.generators()) r.generators.push_back(s.to_cycles());
  r.pair = format_pair({w.x, w.y});
  r.orders = w.orders;
  r.delta = w.delta;
  r.generates = w.generates;
  r.smooth = w.smooth;
  r.frobenius_count = w.frobenius_count;
  return r;
}

namespace {

constexpr std::string_view kClassHeader = "format mf-classification";
constexpr std::string_view kWitnessHeader = "format mf-witness";

std::string join(const std::vector<std::uint64_t>& v) {
  std::string s;
  for (auto x : v) s += (s.empty() ? "" : " ") + std::to_string(x);
  return s.empty() ? "-" : s;
}

std::string join3(const std::array<std::uint64_t, 3>& v) { return join({v.begin(), v.end()}); }

std::string yes_no(bool b) { return b ? "true" : "false"; }

struct Field {
  std::string key;
  std::string value;
  std::size_t line;
};

struct Record {
  std::size_t header_line = 0;
  std::vector<Field> fields;

  const Field& one(std::string_view key) const {
    const Field* hit = nullptr;
    for (const auto& f : fields) {
      if (f.key != key) continue;
      if (hit) throw ParseError("duplicate field '" + std::string(key) + "'", f.line);
      hit = &f;
    }
    if (!hit) throw ParseError("missing field '" + std::string(key) + "'", header_line);
    return *hit;
  }
  const Field* maybe(std::string_view key) const {
    for (const auto& f : fields)
      if (f.key == key) return &f;
    return nullptr;
  }
};

// Reads records of the given kind; each begins with "<header> <version>".
std::vector<Record> read_records(std::istream& in, std::string_view header) {
  std::vector<Record> out;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string_view s = trim(raw);
    if (s.empty() || s.front() == '#') continue;
    if (s.starts_with("format ")) {
      if (!s.starts_with(header)) throw ParseError("unexpected report kind '" + std::string(s) + "'", line);
      auto v = to_u64(s.substr(header.size()));
      if (!v) throw ParseError("bad format version", line);
      if (*v != kReportVersion) {
        throw ParseError("unsupported report version " + std::to_string(*v), line);
      }
      out.push_back({line, {}});
      continue;
    }
    if (out.empty()) throw ParseError("missing format line", line);
    const auto colon = s.find(':');
    if (colon == std::string_view::npos) throw ParseError("expected 'key: value'", line);
    out.back().fields.push_back(
        {std::string(trim(s.substr(0, colon))), std::string(trim(s.substr(colon + 1))), line});
  }
  return out;
}

std::uint64_t get_u64(const Field& f) {
  auto v = to_u64(f.value);
  if (!v) throw ParseError("field '" + f.key + "' is not a non-negative integer", f.line);
  return *v;
}

bool get_bool(const Field& f) {
  if (f.value == "true") return true;
  if (f.value == "false") return false;
  throw ParseError("field '" + f.key + "' must be true or false", f.line);
}

std::vector<std::uint64_t> get_list(const Field& f) {
  std::vector<std::uint64_t> v;
  if (f.value == "-") return v;
  std::istringstream ss(f.value);
  std::string tok;
  while (ss >> tok) {
    auto x = to_u64(tok);
    if (!x) throw ParseError("field '" + f.key + "' has a bad entry '" + tok + "'", f.line);
    v.push_back(*x);
  }
  return v;
}

std::array<std::uint64_t, 3> get_triple(const Field& f) {
  const auto v = get_list(f);
  if (v.size() != 3) throw ParseError("field '" + f.key + "' needs three values", f.line);
  return {v[0], v[1], v[2]};
}

std::optional<bool> get_opt_bool(const Field& f) {
  if (f.value == "-") return std::nullopt;
  return get_bool(f);
}

std::string get_pair(const Field& f, std::size_t degree) {
  try {
    return format_pair(parse_pair(degree, f.value));
  } catch (const Error& e) {
    throw ParseError(std::string("bad pair: ") + e.what(), f.line);
  }
}

const std::map<std::string_view, bool>& class_keys() {
  // key -> required
  static const std::map<std::string_view, bool> k{
      {"group", true},          {"degree", true},      {"pair", true},       {"orders", true},
      {"delta", true},          {"index-gamma", true}, {"cusp-widths", true}, {"level", true},
      {"schedule", true},       {"modulus-used", true}, {"index-closure", true},
      {"closure-computed", true}, {"verdict", true},   {"criterion-verdict", true},
      {"wall-us", false}};
  return k;
}

void check_keys(const Record& r, const std::map<std::string_view, bool>& keys,
                std::initializer_list<std::string_view> repeatable = {}) {
  std::map<std::string_view, std::size_t> seen;
  for (const auto& f : r.fields) {
    if (!keys.contains(f.key)) throw ParseError("unknown field '" + f.key + "'", f.line);
    const bool repeat = std::find(repeatable.begin(), repeatable.end(), f.key) != repeatable.end();
    if (!repeat && seen[f.key]++) throw ParseError("duplicate field '" + f.key + "'", f.line);
  }
  for (const auto& [k, required] : keys) {
    if (std::find(repeatable.begin(), repeatable.end(), k) != repeatable.end()) continue;
    if (required) r.one(k);
  }
}

ClassificationReport to_classification(const Record& r) {
  check_keys(r, class_keys());
  ClassificationReport c;
  c.group = r.one("group").value;
  c.degree = get_u64(r.one("degree"));
  c.pair = get_pair(r.one("pair"), c.degree);
  c.orders = get_triple(r.one("orders"));
  c.delta = get_u64(r.one("delta"));
  c.index_gamma = get_u64(r.one("index-gamma"));
  c.cusp_widths = get_list(r.one("cusp-widths"));
  c.level = get_u64(r.one("level"));
  const Field& sched = r.one("schedule");
  if (sched.value != "-") {
    std::istringstream ss(sched.value);
    std::string tok;
    while (ss >> tok) {
      const auto colon = tok.find(':');
      auto m = colon == std::string::npos ? std::nullopt : to_u64(std::string_view(tok).substr(0, colon));
      auto i = colon == std::string::npos ? std::nullopt : to_u64(std::string_view(tok).substr(colon + 1));
      if (!m || !i) throw ParseError("schedule entries are modulus:index", sched.line);
      c.schedule.push_back({*m, *i});
    }
  }
  c.modulus_used = get_u64(r.one("modulus-used"));
  c.index_closure = get_u64(r.one("index-closure"));
  c.closure_computed = get_bool(r.one("closure-computed"));
  const Field& v = r.one("verdict");
  auto verdict = parse_verdict(v.value);
  if (!verdict) throw ParseError("unknown verdict '" + v.value + "'", v.line);
  c.verdict = *verdict;
  c.criterion_verdict = get_opt_bool(r.one("criterion-verdict"));
  if (const Field* w = r.maybe("wall-us")) c.wall_us = get_u64(*w);
  return c;
}

}  // namespace

void write_report(std::ostream& out, const ClassificationReport& r) {
  out << kClassHeader << ' ' << kReportVersion << '\n';
  out << "group: " << r.group << '\n';
  out << "degree: " << r.degree << '\n';
  out << "pair: " << r.pair << '\n';
  out << "orders: " << join3(r.orders) << '\n';
  out << "delta: " << r.delta << '\n';
  out << "index-gamma: " << r.index_gamma << '\n';
  out << "cusp-widths: " << join(r.cusp_widths) << '\n';
  out << "level: " << r.level << '\n';
  out << "schedule:";
  if (r.schedule.empty()) out << " -";
  for (const auto& s : r.schedule) out << ' ' << s.modulus << ':' << s.index;
  out << '\n';
  out << "modulus-used: " << r.modulus_used << '\n';
  out << "index-closure: " << r.index_closure << '\n';
  out << "closure-computed: " << yes_no(r.closure_computed) << '\n';
  out << "verdict: " << to_string(r.verdict) << '\n';
  out << "criterion-verdict: " << (r.criterion_verdict ? yes_no(*r.criterion_verdict) : "-") << '\n';
  if (r.wall_us) out << "wall-us: " << *r.wall_us << '\n';
}

void write_report(std::ostream& out, const WitnessReport& r) {
  out << kWitnessHeader << ' ' << kReportVersion << '\n';
  out << "group: " << r.group << '\n';
  out << "degree: " << r.degree << '\n';
  for (const auto& g : r.generators) out << "generator: " << g << '\n';
  out << "pair: " << r.pair << '\n';
  out << "orders: " << join3(r.orders) << '\n';
  out << "delta: " << r.delta << '\n';
  out << "generates: " << yes_no(r.generates) << '\n';
  out << "smooth: " << (r.smooth ? yes_no(*r.smooth) : "-") << '\n';
  out << "frobenius-count: " << (r.frobenius_count ? r.frobenius_count->str() : "-") << '\n';
  for (const auto& c : r.certificates) out << "certificate: " << c << '\n';
}

template <class R>
static void write_report_file(const std::filesystem::path& path, const R& r) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  write_report(out, r);
}

void write_report(const std::filesystem::path& path, const ClassificationReport& r) { write_report_file(path, r); }
void write_report(const std::filesystem::path& path, const WitnessReport& r) { write_report_file(path, r); }

std::vector<ClassificationReport> read_classification_reports(std::istream& in) {
  std::vector<ClassificationReport> out;
  for (const auto& rec : read_records(in, kClassHeader)) out.push_back(to_classification(rec));
  return out;
}

ClassificationReport read_classification_report(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open report " + path.string());
  auto all = read_classification_reports(in);
  if (all.size() != 1) throw ParseError("expected exactly one classification report in " + path.string());
  return all.front();
}

WitnessReport read_witness_report(std::istream& in) {
  const auto recs = read_records(in, kWitnessHeader);
  if (recs.size() != 1) throw ParseError("expected exactly one witness report");
  const Record& r = recs.front();
  static const std::map<std::string_view, bool> keys{
      {"group", true},    {"degree", true}, {"generator", false}, {"pair", true},
      {"orders", true},   {"delta", true},  {"generates", true},  {"smooth", true},
      {"frobenius-count", true}, {"certificate", false}};
  check_keys(r, keys, {"generator", "certificate"});
  WitnessReport w;
  w.group = r.one("group").value;
  w.degree = get_u64(r.one("degree"));
  for (const auto& f : r.fields) {
    if (f.key == "generator") {
      try {
        w.generators.push_back(Permutation::from_cycles(w.degree, f.value).to_cycles());
      } catch (const Error& e) {
        throw ParseError(std::string("bad generator: ") + e.what(), f.line);
      }
    } else if (f.key == "certificate") {
      w.certificates.push_back(f.value);
    }
  }
  w.pair = get_pair(r.one("pair"), w.degree);
  w.orders = get_triple(r.one("orders"));
  w.delta = get_u64(r.one("delta"));
  w.generates = get_bool(r.one("generates"));
  w.smooth = get_opt_bool(r.one("smooth"));
  const Field& fc = r.one("frobenius-count");
  if (fc.value != "-") {
    try {
      w.frobenius_count = Integer(fc.value);
    } catch (const std::exception&) {
      throw ParseError("bad frobenius-count", fc.line);
    }
  }
  return w;
}

WitnessReport read_witness_report(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open report " + path.string());
  return read_witness_report(in);
}

// ---------------------------------------------------------------------------
// Corpus

std::vector<CorpusEntry> parse_manifest(std::istream& in) {
  std::vector<CorpusEntry> out;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string_view s = raw;
    if (auto h = s.find('#'); h != std::string_view::npos) s = s.substr(0, h);
    if (trim(s).empty()) continue;
    std::istringstream ss{std::string(s)};
    std::string group, mode, verdicts, extra;
    if (!(ss >> group >> mode >> verdicts) || (ss >> extra)) {
      throw ParseError("expected '<group> <exhaustive|sample=N> <verdicts>'", line);
    }
    CorpusEntry e;
    e.line = line;
    try {
      e.group = GroupSpec::parse(group);
    } catch (const ParseError& err) {
      throw ParseError(err.what(), line);
    }
    if (mode.starts_with("sample=")) {
      auto n = to_u64(std::string_view(mode).substr(7));
      if (!n || *n == 0) throw ParseError("bad sample size", line);
      e.sample = *n;
    } else if (mode != "exhaustive") {
      throw ParseError("mode must be 'exhaustive' or 'sample=N'", line);
    }
    std::string_view vs = verdicts;
    while (!vs.empty()) {
      const auto comma = vs.find(',');
      const auto tok = vs.substr(0, comma);
      auto v = parse_verdict(tok);
      if (!v) throw ParseError("unknown verdict '" + std::string(tok) + "'", line);
      e.expected.push_back(*v);
      vs = comma == std::string_view::npos ? std::string_view{} : vs.substr(comma + 1);
    }
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<CorpusEntry> parse_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open manifest " + path.string());
  return parse_manifest(in);
}

CorpusEntryResult run_corpus_entry(const CorpusEntry& entry, const CorpusOptions& opts) {
  CorpusEntryResult res;
  res.entry = entry;
  const PermGroup g = build(entry.group, opts.bounds);
  const std::string id = entry.group.id();
  const auto classes =
      entry.sample == 0 ? presentation_classes(g) : sample_presentation_classes(g, entry.sample, opts.seed);
  if (entry.sample != 0 && classes.size() < entry.sample) {
    res.failures.push_back("only " + std::to_string(classes.size()) + " classes sampled");
  }

  std::vector<std::optional<ClassificationReport>> slots(classes.size());
  std::vector<std::string> errors(classes.size());
  const unsigned workers = std::max(1u, opts.workers);
  auto work = [&](unsigned w) {
    for (std::size_t i = w; i < classes.size(); i += workers) {
      const auto t0 = std::chrono::steady_clock::now();
      try {
        const auto r = classify(g, classes[i].x, classes[i].y, opts.classify);
        auto rep = make_classification_report(id, classes[i], r);
        if (opts.timing) {
          rep.wall_us = static_cast<std::uint64_t>(
              std::chrono::duration_cast<std::chrono::microseconds>(std::chrono::steady_clock::now() - t0).count());
        }
        slots[i] = std::move(rep);
      } catch (const InconclusiveError& e) {
        errors[i] = std::string("inconclusive: ") + e.what();
      } catch (const Error& e) {
        errors[i] = e.what();
      }
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }

  for (std::size_t i = 0; i < classes.size(); ++i) {
    const std::string where = id + " " + format_pair(classes[i]);
    if (!slots[i]) {
      res.failures.push_back(where + ": " + errors[i]);
      continue;
    }
    const auto& rep = *slots[i];
    if (std::find(entry.expected.begin(), entry.expected.end(), rep.verdict) == entry.expected.end()) {
      res.failures.push_back(where + ": unexpected verdict " + std::string(to_string(rep.verdict)));
    }
    res.reports.push_back(rep);
  }
  return res;
}

std::string report_file_stem(const std::string& group_id) {
  std::string s;
  for (char c : group_id) {
    if (std::isalnum(static_cast<unsigned char>(c))) s += c;
    else if (c != ')') s += '_';
  }
  return s;
}

}  // namespace mf
