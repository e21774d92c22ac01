#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mf/cyclotomic.hpp"
#include "mf/modular.hpp"
#include "mf/perm_group.hpp"
#include "mf/triples.hpp"

namespace mf {

struct CatalogBounds {
  std::uint64_t max_n = 16;  // A_n, S_n, C_n, D_n
  std::uint64_t max_p = 61;  // PSL2(p), SL2(p)
};

// Names: A5, S7, C6, D4 (dihedral of order 8), Q8, PSL2(7), SL2(5),
// products joined by 'x' (C2xC2), and file:<path>.
struct GroupSpec {
  enum class Kind { alternating, symmetric, cyclic, dihedral, quaternion, psl2, sl2, product, file };
  Kind kind = Kind::cyclic;
  std::uint64_t param = 1;
  std::vector<GroupSpec> factors;  // product only
  std::string path;                // file only

  static GroupSpec parse(std::string_view text);
  std::string id() const;
  friend bool operator==(const GroupSpec&, const GroupSpec&) = default;
};

// Throws BoundError for parameters outside `bounds`, DomainError for
// non-prime p, ParseError for bad group files.
PermGroup build(const GroupSpec& spec, const CatalogBounds& bounds = {});

// Closed-form order, or nullopt for file specs.
std::optional<std::uint64_t> expected_order(const GroupSpec& spec);

// "degree N", then one generator per line in 1-based cycle notation; '#' starts a comment.
void write_group_file(std::ostream& out, const PermGroup& g);
void write_group_file(const std::filesystem::path& path, const PermGroup& g);
PermGroup read_group_file(std::istream& in);
PermGroup read_group_file(const std::filesystem::path& path);

struct ClassificationReport {
  std::string group;
  std::size_t degree = 0;
  std::string pair;
  std::array<std::uint64_t, 3> orders{};
  std::uint64_t delta = 0;
  std::uint64_t index_gamma = 0;
  std::vector<std::uint64_t> cusp_widths;
  std::uint64_t level = 0;
  std::vector<ClosureStep> schedule;
  std::uint64_t modulus_used = 0;
  std::uint64_t index_closure = 0;
  bool closure_computed = false;
  Verdict verdict = Verdict::noncongruence;
  std::optional<bool> criterion_verdict;
  std::optional<std::uint64_t> wall_us;

  friend bool operator==(const ClassificationReport&, const ClassificationReport&) = default;
};

ClassificationReport make_classification_report(const std::string& group_id, const PermPair& pair,
                                                const ClosureResult& r);

struct WitnessReport {
  std::string group;
  std::size_t degree = 0;
  std::vector<std::string> generators;
  std::string pair;
  std::array<std::uint64_t, 3> orders{};
  std::uint64_t delta = 0;
  bool generates = false;
  std::optional<bool> smooth;
  std::optional<Integer> frobenius_count;
  std::vector<std::string> certificates;  // Nielsen move words or conjugation notes

  friend bool operator==(const WitnessReport&, const WitnessReport&) = default;
};

WitnessReport make_witness_report(const std::string& group_id, const PermGroup& g, const TripleWitness& w);

inline constexpr int kReportVersion = 1;

void write_report(std::ostream& out, const ClassificationReport& r);
void write_report(std::ostream& out, const WitnessReport& r);
void write_report(const std::filesystem::path& path, const ClassificationReport& r);
void write_report(const std::filesystem::path& path, const WitnessReport& r);

// Several classification reports may share a stream; each starts at its format line.
std::vector<ClassificationReport> read_classification_reports(std::istream& in);
ClassificationReport read_classification_report(const std::filesystem::path& path);
WitnessReport read_witness_report(std::istream& in);
WitnessReport read_witness_report(const std::filesystem::path& path);

// Manifest line: <group> <exhaustive | sample=N> <verdict>[,<verdict>...]
struct CorpusEntry {
  GroupSpec group;
  std::size_t sample = 0;  // 0 = exhaustive
  std::vector<Verdict> expected;
  std::size_t line = 0;
};

std::vector<CorpusEntry> parse_manifest(std::istream& in);
std::vector<CorpusEntry> parse_manifest(const std::filesystem::path& path);

struct CorpusOptions {
  std::uint64_t seed = 1;
  unsigned workers = 1;
  bool timing = false;
  ClassifyOptions classify;
  CatalogBounds bounds;
};

struct CorpusEntryResult {
  CorpusEntry entry;
  std::vector<ClassificationReport> reports;  // in class order
  std::vector<std::string> failures;          // unexpected verdicts, inconclusive closures

  bool ok() const { return failures.empty(); }
};

// Classifies every class (or a seeded sample) of the entry's group. The
// output does not depend on the worker count.
CorpusEntryResult run_corpus_entry(const CorpusEntry& entry, const CorpusOptions& opts = {});

// File-system friendly form of a group id.
std::string report_file_stem(const std::string& group_id);

}  // namespace mf
