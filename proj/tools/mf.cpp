// mf: command-line front end for the permutation-group, character-table,
// triple-search and modular-action code.

#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>

#include "mf/catalog.hpp"
#include "mf/char_table.hpp"
#include "mf/conj_classes.hpp"
#include "mf/error.hpp"
#include "mf/modular.hpp"
#include "mf/ppd.hpp"
#include "mf/triples.hpp"

namespace {

using namespace mf;

enum Exit { kOk = 0, kNegative = 1, kUsage = 2, kInconclusive = 3, kInternal = 4 };

struct Globals {
  std::string format = "table";
  bool timing = false;
  std::uint64_t seed = 1;
  unsigned workers = 1;
  std::uint64_t max_orbit = kDefaultMaxOrbit;
  std::uint64_t modulus_cap = IndexOptions{}.modulus_cap;
  std::uint64_t max_n = CatalogBounds{}.max_n;
  std::uint64_t max_p = CatalogBounds{}.max_p;

  bool report() const { return format == "report"; }
  CatalogBounds bounds() const { return {max_n, max_p}; }
  IndexOptions index() const {
    IndexOptions o;
    o.modulus_cap = modulus_cap;
    return o;
  }
};

Globals G;

PermGroup load_group(const std::string& name) { return build(GroupSpec::parse(name), G.bounds()); }

std::string group_id(const std::string& name) { return GroupSpec::parse(name).id(); }

// Key/value blocks: the report format verbatim, or an aligned table without the format line.
void emit(const std::string& report_text) {
  if (G.report()) {
    std::cout << report_text;
    return;
  }
  std::istringstream in(report_text);
  for (std::string line; std::getline(in, line);) {
    if (line.starts_with("format ")) continue;
    const auto colon = line.find(": ");
    if (colon == std::string::npos) {
      std::cout << line << '\n';
      continue;
    }
    std::cout << std::left << std::setw(20) << line.substr(0, colon) << line.substr(colon + 2) << '\n';
  }
}

template <class R>
void emit_report(const R& r) {
  std::ostringstream ss;
  write_report(ss, r);
  emit(ss.str());
}

std::string join(const std::vector<std::string>& v, const char* sep = " ") {
  std::string s;
  for (const auto& x : v) s += (s.empty() ? "" : sep) + x;
  return s;
}

template <class T>
std::string join_num(const T& v, const char* sep = " ") {
  std::vector<std::string> s;
  for (const auto& x : v) {
    std::ostringstream o;
    o << x;
    s.push_back(o.str());
  }
  return join(s, sep);
}

std::array<std::size_t, 3> parse_class_triple(const std::string& text, std::size_t classes) {
  std::array<std::size_t, 3> out{};
  std::istringstream in(text);
  std::string tok;
  std::size_t n = 0;
  while (std::getline(in, tok, ',')) {
    if (n == 3) throw ParseError("--classes takes three class numbers");
    std::size_t k = 0;
    try {
      k = std::stoul(tok);
    } catch (const std::exception&) {
      throw ParseError("bad class number '" + tok + "'");
    }
    if (k == 0 || k > classes) throw ParseError("class number " + tok + " out of range 1.." + std::to_string(classes));
    out[n++] = k - 1;
  }
  if (n != 3) throw ParseError("--classes takes three class numbers");
  return out;
}

std::string rational_text(const Rational& q) {
  std::ostringstream s;
  s << numerator(q);
  if (denominator(q) != 1) s << '/' << denominator(q);
  return s.str();
}

// ---------------------------------------------------------------------------

int cmd_group_info(const std::string& name) {
  const auto g = load_group(name);
  std::ostringstream s;
  s << "format mf-group-info 1\n";
  s << "group: " << group_id(name) << '\n';
  s << "degree: " << g.degree() << '\n';
  s << "order: " << g.order() << '\n';
  for (const auto& x : g.generators()) s << "generator: " << x.to_cycles() << '\n';
  s << "abelian: " << (g.is_abelian() ? "true" : "false") << '\n';
  try {
    s << "center-order: " << center(g).order() << '\n';
  } catch (const BoundError&) {
    s << "center-order: -\n";  // too large to enumerate
  }
  if (auto e = expected_order(GroupSpec::parse(name)); e && *e != g.order()) {
    throw VerificationError("built order differs from the closed form");
  }
  emit(s.str());
  return kOk;
}

int cmd_classes(const std::string& name) {
  const auto g = load_group(name);
  const auto cc = conjugacy_classes(g);
  if (G.report()) std::cout << "format mf-classes 1\n";
  std::cout << "# class size order representative\n";
  for (std::size_t k = 0; k < cc.size(); ++k) {
    std::cout << std::setw(5) << k + 1 << ' ' << std::setw(8) << cc.sizes()[k] << ' ' << std::setw(5)
              << cc.orders()[k] << "  " << cc.reps()[k].to_cycles() << '\n';
  }
  return kOk;
}

int cmd_chartab(const std::string& name, const std::string& out) {
  const auto g = load_group(name);
  const auto t = dixon_table(g);
  if (!out.empty()) {
    write_table(std::filesystem::path(out), t);
    std::cout << "wrote " << t.size() << " characters to " << out << '\n';
  } else if (G.report()) {
    write_table(std::cout, t);
  } else {
    std::cout << "degrees: " << join_num(t.degrees()) << '\n';
    write_table(std::cout, t);
  }
  return kOk;
}

int cmd_frobenius(const std::string& name, const std::string& table_file, const std::string& classes) {
  if (name.empty() == table_file.empty()) throw ParseError("give exactly one of --group or --table");
  const CharacterTable t = table_file.empty() ? dixon_table(load_group(name)) : read_table(std::filesystem::path(table_file));
  const auto [i, j, k] = parse_class_triple(classes, t.size());
  const auto fc = frobenius_count(t, i, j, k);
  const auto sb = sum1_bound(t, i, j, k);
  std::ostringstream s;
  s << "format mf-frobenius 1\n";
  s << "classes: " << i + 1 << ' ' << j + 1 << ' ' << k + 1 << '\n';
  s << "orders: " << t.class_orders()[i] << ' ' << t.class_orders()[j] << ' ' << t.class_orders()[k] << '\n';
  s << "count: " << fc.count << '\n';
  s << "rational-sum: " << rational_text(fc.rational_sum) << '\n';
  s << "direct-sum: " << rational_text(fc.direct_sum) << '\n';
  s << "sum1: " << rational_text(sb.exact) << '\n';
  s << "sum1-enclosure: " << std::setprecision(12) << sb.lower << ' ' << sb.upper << '\n';
  s << "sum1-below-one: " << (sb.below_one() ? "true" : "false") << '\n';
  emit(s.str());
  return fc.count > 0 ? kOk : kNegative;
}

int cmd_triples_search(const std::string& name, std::uint64_t budget, const std::string& smooth) {
  const auto g = load_group(name);
  SearchOptions o;
  o.budget = budget;
  o.seed = G.seed;
  o.workers = G.workers;
  std::optional<PermGroup> z;
  if (!smooth.empty()) {
    if (smooth == "center") {
      z = center(g);
    } else {
      std::vector<Permutation> gens;
      std::istringstream in(smooth);
      for (std::string tok; std::getline(in, tok, ';');) gens.push_back(Permutation::from_cycles(g.degree(), tok));
      z = subgroup_generated(g.degree(), gens);
    }
    o.require_smooth = &*z;
  }
  const auto r = search_coprime_pair(g, o);
  if (!r.witness) {
    if (r.reason == "abelian obstruction") {
      std::cout << "no witness (abelian obstruction delta=" << r.obstruction_delta << ")\n";
    } else if (r.reason == "budget exhausted") {
      std::cout << "no witness (budget exhausted after " << r.iterations << " iterations)\n";
    } else {
      std::cout << "no witness (" << r.reason << ")\n";
    }
    return kNegative;
  }
  auto rep = make_witness_report(group_id(name), g, *r.witness);
  rep.certificates.push_back("search seed=" + std::to_string(G.seed) + " iteration=" + std::to_string(r.iterations));
  emit_report(rep);
  return kOk;
}

int cmd_triples_verify(const std::string& name, const std::string& pair_text, bool with_table) {
  const auto g = load_group(name);
  const auto p = parse_pair(g.degree(), pair_text);
  std::optional<ConjClassTable> cc;
  std::optional<CharacterTable> t;
  if (with_table) {
    cc = conjugacy_classes(g);
    t = dixon_table(g, *cc);
  }
  const auto w = verify_witness(g, p.x, p.y, t ? &*t : nullptr, cc ? &*cc : nullptr);
  emit_report(make_witness_report(group_id(name), g, w));
  return w.coprime() && w.generates ? kOk : kNegative;
}

int cmd_witness_alt(std::size_t n) {
  if (n > G.max_n) throw BoundError("n exceeds the catalog bound " + std::to_string(G.max_n));
  const auto w = alternating_witness(n);
  const auto g = alternating_group(n);
  auto rep = make_witness_report("A" + std::to_string(n), g, w.report);
  rep.certificates.push_back("conjugation " + w.conjugation + " by " + w.conjugator.to_cycles());
  emit_report(rep);
  return w.report.coprime() && w.report.generates ? kOk : kNegative;
}

int cmd_ppd(std::uint64_t a, std::uint64_t d) {
  const auto r = ppd(a, d);
  if (!r.prime) {
    std::cout << "none" << (r.exceptional ? " (exceptional)" : "") << '\n';
    return kNegative;
  }
  std::cout << *r.prime << '\n';
  return kOk;
}

int cmd_smooth(const std::string& name, const std::string& pair_text) {
  const auto g = load_group(name);
  const auto p = parse_pair(g.degree(), pair_text);
  const auto z = center(g);
  const Permutation xy = p.x * p.y;
  std::ostringstream s;
  s << "format mf-smooth 1\n";
  s << "group: " << group_id(name) << '\n';
  s << "center-order: " << z.order() << '\n';
  s << "orders: " << element_order(p.x) << ' ' << element_order(p.y) << ' ' << element_order(xy) << '\n';
  s << "orders-mod-center: " << order_mod_subgroup(g, z, p.x) << ' ' << order_mod_subgroup(g, z, p.y) << ' '
    << order_mod_subgroup(g, z, xy) << '\n';
  const bool ok = smooth_pair_check(g, z, p.x, p.y);
  s << "generates: " << (generates(g, p.x, p.y) ? "true" : "false") << '\n';
  s << "smooth: " << (ok ? "true" : "false") << '\n';
  emit(s.str());
  return ok ? kOk : kNegative;
}

int cmd_nielsen(const std::string& name, const std::string& a, const std::string& b, std::uint64_t bound,
                bool mod_inn) {
  const auto g = load_group(name);
  NielsenOptions o;
  o.bound = bound;
  o.mod_inn = mod_inn;
  const auto r = nielsen_equivalent(g, parse_pair(g.degree(), a), parse_pair(g.degree(), b), o);
  std::ostringstream s;
  s << "format mf-nielsen 1\n";
  s << "verdict: " << to_string(r.verdict) << '\n';
  s << "certificate: " << (r.certificate.empty() ? "-" : r.certificate) << '\n';
  s << "explored: " << r.explored << '\n';
  emit(s.str());
  return r.verdict == NielsenVerdict::equivalent ? kOk : kNegative;
}

int cmd_orbit(const std::string& name, const std::string& pair_text, bool points, bool stabilizer) {
  const auto g = load_group(name);
  const auto p = parse_pair(g.degree(), pair_text);
  const auto o = orbit_and_coset_table(g, p, G.max_orbit);
  const auto cd = cusp_data(o);
  std::ostringstream s;
  s << "format mf-orbit 1\n";
  s << "group: " << group_id(name) << '\n';
  s << "base: " << format_pair(o.points[0]) << '\n';
  s << "index-gamma: " << o.size() << '\n';
  s << "cusp-widths: " << join_num(cd.widths) << '\n';
  s << "level: " << cd.level << '\n';
  s << "relations: " << (check_sl2_relations(o) ? "ok" : "violated") << '\n';
  if (points) {
    for (std::size_t i = 0; i < o.size(); ++i) {
      const std::string w = o.word_to(i);
      s << "point: " << i + 1 << ' ' << format_pair(o.points[i]) << ' ' << (w.empty() ? "-" : w) << '\n';
    }
  }
  if (stabilizer) {
    const auto mats = stabilizer_generators(o);
    const auto words = stabilizer_words(o);
    for (std::size_t i = 0; i < mats.size(); ++i) s << "stabilizer: " << words[i] << ' ' << to_string(mats[i]) << '\n';
  }
  emit(s.str());
  return check_sl2_relations(o) ? kOk : kInternal;
}

int cmd_classify(const std::string& name, const std::string& pair_text, bool audit) {
  const auto g = load_group(name);
  const auto p = parse_pair(g.degree(), pair_text);
  ClassifyOptions o;
  o.audit = audit;
  o.max_orbit = G.max_orbit;
  o.index = G.index();
  const auto t0 = std::chrono::steady_clock::now();
  auto rep = make_classification_report(group_id(name), p, classify(g, p.x, p.y, o));
  if (G.timing) {
    rep.wall_us = static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::microseconds>(std::chrono::steady_clock::now() - t0).count());
  }
  emit_report(rep);
  return kOk;
}

int cmd_closure(const std::string& name, const std::string& pair_text) {
  const auto g = load_group(name);
  const auto p = parse_pair(g.degree(), pair_text);
  const auto o = orbit_and_coset_table(g, p, G.max_orbit);
  auto r = congruence_closure(o, G.index());
  r.criterion_verdict = coprime_criterion(g, p.x, p.y);
  emit_report(make_classification_report(group_id(name), p, r));
  return kOk;
}

int cmd_corpus_run(const std::string& manifest, const std::string& out_dir, bool audit) {
  const auto entries = parse_manifest(std::filesystem::path(manifest));
  CorpusOptions o;
  o.seed = G.seed;
  o.workers = G.workers;
  o.timing = G.timing;
  o.classify.audit = audit;
  o.classify.max_orbit = G.max_orbit;
  o.classify.index = G.index();
  o.bounds = G.bounds();
  if (!out_dir.empty()) std::filesystem::create_directories(out_dir);
  bool all_ok = true;
  for (const auto& e : entries) {
    const auto r = run_corpus_entry(e, o);
    std::map<Verdict, std::size_t> counts;
    for (const auto& rep : r.reports) ++counts[rep.verdict];
    std::cout << std::left << std::setw(12) << e.group.id() << ' ' << std::setw(10)
              << (e.sample ? "sample=" + std::to_string(e.sample) : std::string("exhaustive")) << ' '
              << r.reports.size() << " classes";
    for (const auto& [v, n] : counts) std::cout << ' ' << to_string(v) << '=' << n;
    std::cout << (r.ok() ? "  ok" : "  FAILED") << '\n';
    for (const auto& f : r.failures) std::cout << "  " << f << '\n';
    all_ok = all_ok && r.ok();
    if (!out_dir.empty()) {
      std::ofstream f(std::filesystem::path(out_dir) / (report_file_stem(e.group.id()) + ".txt"));
      for (std::size_t i = 0; i < r.reports.size(); ++i) {
        if (i) f << '\n';
        write_report(f, r.reports[i]);
      }
    }
  }
  return all_ok ? kOk : kNegative;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generating pairs, character tables and the modular action on presentations"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");
  app.add_option("--format", G.format, "Output style: table (human) or report (line-oriented key: value)")
      ->check(CLI::IsMember({"table", "report"}));
  app.add_flag("--timing", G.timing, "Report wall time (classify, corpus run) or print it to stderr");
  app.add_option("--seed", G.seed, "Random seed for searches and samples");
  app.add_option("--workers", G.workers, "Worker threads; output does not depend on this")->check(CLI::PositiveNumber);
  app.add_option("--max-orbit", G.max_orbit, "Largest modular orbit to enumerate")->envname("MF_MAX_ORBIT");
  app.add_option("--modulus-cap", G.modulus_cap, "Largest modulus in closure computations")
      ->envname("MF_MODULUS_CAP");
  app.add_option("--max-n", G.max_n, "Catalog bound on n for A_n, S_n, C_n, D_n");
  app.add_option("--max-p", G.max_p, "Catalog bound on p for PSL2(p), SL2(p)");
  app.footer(
      "Groups: A5, S7, C6, D4 (order 8), Q8, PSL2(7), SL2(5), products like C2xC2, file:<path>.\n"
      "Pairs: \"(1 2 3 4 5);(1 2 3)\" in 1-based cycle notation.\n"
      "Environment: MF_MAX_ORBIT, MF_MODULUS_CAP set the defaults of --max-orbit, --modulus-cap.\n"
      "Exit codes: 0 success, 1 negative result, 2 usage/parse/bound/domain error,\n"
      "            3 inconclusive closure, 4 failed internal verification.");

  std::string group, pair, pair2, table, classes, out, smooth, manifest;
  std::uint64_t budget = SearchOptions{}.budget, bound = NielsenOptions{}.bound, a = 0, d = 0;
  std::size_t n = 0;
  bool audit = false, mod_inn = false, with_table = false, points = false, stab = false;
  std::function<int()> run;

  auto need_group = [&](CLI::App* c) { c->add_option("--group,-g", group, "Group name")->required(); };
  auto need_pair = [&](CLI::App* c) { c->add_option("--pair,-p", pair, "Pair x;y")->required(); };

  auto* grp = app.add_subcommand("group", "Group information");
  grp->require_subcommand(1);
  auto* info = grp->add_subcommand("info", "Degree, order, generators, center");
  need_group(info);
  info->callback([&] { run = [&] { return cmd_group_info(group); }; });

  auto* cls = app.add_subcommand("classes", "Conjugacy classes");
  need_group(cls);
  cls->callback([&] { run = [&] { return cmd_classes(group); }; });

  auto* ct = app.add_subcommand("chartab", "Character table (Dixon-Schur)");
  need_group(ct);
  ct->add_option("--out,-o", out, "Write the table to a file");
  ct->callback([&] { run = [&] { return cmd_chartab(group, out); }; });

  auto* fr = app.add_subcommand("frobenius", "Class-triple structure constant from characters");
  fr->add_option("--group,-g", group, "Group name");
  fr->add_option("--table,-t", table, "Character table file");
  fr->add_option("--classes,-c", classes, "Three 1-based class numbers i,j,k")->required();
  fr->callback([&] { run = [&] { return cmd_frobenius(group, table, classes); }; });

  auto* tr = app.add_subcommand("triples", "Pairwise coprime generating pairs");
  tr->require_subcommand(1);
  auto* ts = tr->add_subcommand("search", "Randomized search");
  need_group(ts);
  ts->add_option("--budget", budget, "Iterations");
  ts->add_option("--require-smooth", smooth,
                 "Search for a pair smooth with respect to Z: 'center' or generators 'a;b;...'");
  ts->callback([&] { run = [&] { return cmd_triples_search(group, budget, smooth); }; });
  auto* tv = tr->add_subcommand("verify", "Check a given pair");
  need_group(tv);
  need_pair(tv);
  tv->add_flag("--frobenius", with_table, "Also count the class triple from the character table");
  tv->callback([&] { run = [&] { return cmd_triples_verify(group, pair, with_table); }; });

  auto* wi = app.add_subcommand("witness", "Explicit witnesses");
  wi->require_subcommand(1);
  auto* alt = wi->add_subcommand("alt", "Coprime generating pair of A_n");
  alt->add_option("n", n, "Degree")->required()->check(CLI::Range(5, 1000));
  alt->callback([&] { run = [&] { return cmd_witness_alt(n); }; });

  auto* pp = app.add_subcommand("ppd", "Largest primitive prime divisor of a^d - 1");
  pp->add_option("a", a)->required();
  pp->add_option("d", d)->required();
  pp->callback([&] { run = [&] { return cmd_ppd(a, d); }; });

  auto* sm = app.add_subcommand("smooth", "Orders of x, y, xy modulo the center");
  need_group(sm);
  need_pair(sm);
  sm->callback([&] { run = [&] { return cmd_smooth(group, pair); }; });

  auto* ni = app.add_subcommand("nielsen", "Nielsen equivalence of two generating pairs");
  need_group(ni);
  need_pair(ni);
  ni->add_option("--to", pair2, "Second pair")->required();
  ni->add_option("--bound", bound, "States explored before giving up");
  ni->add_flag("--mod-inn", mod_inn, "Identify pairs up to simultaneous conjugation");
  ni->callback([&] { run = [&] { return cmd_nielsen(group, pair, pair2, bound, mod_inn); }; });

  auto* ob = app.add_subcommand("orbit", "Modular orbit of a presentation class");
  need_group(ob);
  need_pair(ob);
  ob->add_flag("--points", points, "List orbit points with coset words");
  ob->add_flag("--stabilizer", stab, "List stabilizer generators");
  ob->callback([&] { run = [&] { return cmd_orbit(group, pair, points, stab); }; });

  auto* cf = app.add_subcommand("classify", "Congruence verdict for the stabilizer of a presentation");
  need_group(cf);
  need_pair(cf);
  cf->add_flag("--audit", audit, "Always run the closure pipeline and cross-check the criterion");
  cf->callback([&] { run = [&] { return cmd_classify(group, pair, audit); }; });

  auto* cl = app.add_subcommand("closure", "Congruence closure index over the modulus schedule");
  need_group(cl);
  need_pair(cl);
  cl->callback([&] { run = [&] { return cmd_closure(group, pair); }; });

  auto* co = app.add_subcommand("corpus", "Corpus runs");
  co->require_subcommand(1);
  auto* cr = co->add_subcommand("run", "Classify every manifest entry");
  cr->add_option("--manifest,-m", manifest, "Manifest file")->required()->check(CLI::ExistingFile);
  cr->add_option("--out,-o", out, "Directory for per-group reports");
  cr->add_flag("--audit", audit, "Run the closure pipeline on every class");
  cr->callback([&] { run = [&] { return cmd_corpus_run(manifest, out, audit); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  const auto t0 = std::chrono::steady_clock::now();
  int rc = kOk;
  try {
    rc = run();
  } catch (const InconclusiveError& e) {
    std::cerr << "inconclusive: " << e.what() << '\n';
    rc = kInconclusive;
  } catch (const VerificationError& e) {
    std::cerr << "verification failed: " << e.what() << '\n';
    rc = kInternal;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    rc = kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    rc = kUsage;
  }
  if (G.timing) {
    std::cerr << "time: "
              << std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count() << " ms\n";
  }
  return rc;
}
