#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mf/conj_classes.hpp"
#include "mf/cyclotomic.hpp"
#include "mf/perm.hpp"
#include "mf/perm_group.hpp"

namespace mf {

// Inverse-closed letters for SL2(Z) words: S, T, U and their inverses s, t, u.
// On pairs (right action, letters applied left to right):
//   T: (x, y) -> (x, xy)    S: (x, y) -> (y, x^-1)    U: (x, y) -> (xy, y)
// with abelianized matrices T = [[1,1],[0,1]], S = [[0,-1],[1,0]], U = [[1,0],[1,1]].
// A word l1...lk corresponds to the matrix product M(l1)...M(lk).
PermPair act_on_pair(char letter, const PermPair& p);

// Canonical class of letter applied to a class.
PermPair apply_generator(const PairCanonicalizer& canon, char letter, const PermPair& c);
PermPair apply_word(const PairCanonicalizer& canon, std::string_view word, const PermPair& c);

struct SL2Matrix {
  Integer a = 1, b = 0, c = 0, d = 1;

  static SL2Matrix of_letter(char letter);
  static SL2Matrix of_word(std::string_view word);
  Integer det() const { return a * d - b * c; }
  SL2Matrix inverse() const { return {d, -b, -c, a}; }
  friend SL2Matrix operator*(const SL2Matrix& x, const SL2Matrix& y);
  friend bool operator==(const SL2Matrix&, const SL2Matrix&) = default;
};
std::string to_string(const SL2Matrix& m);

// Orbit of a presentation class under <S, T>, numbered in BFS order with the
// S-edge explored before the T-edge. Point 0 is the base class.
struct ModularOrbit {
  const PermGroup* group = nullptr;
  std::vector<PermPair> points;
  std::vector<std::uint32_t> sigma_s;
  std::vector<std::uint32_t> sigma_t;
  std::vector<std::int64_t> parent;  // -1 for the base point
  std::vector<char> edge;           // 'S' or 'T' from the parent

  std::size_t size() const { return points.size(); }
  // Word in S, T taking the base point to point i.
  std::string word_to(std::size_t i) const;
};

inline constexpr std::uint64_t kDefaultMaxOrbit = 1'000'000;

// Throws DomainError unless (x, y) generates g, BoundError past max_points,
// VerificationError if the SL2(Z) relations fail on the orbit.
ModularOrbit orbit_and_coset_table(const PermGroup& g, const PermPair& base,
                                   std::uint64_t max_points = kDefaultMaxOrbit);

// sigma_S^4 = 1, sigma_S^2 = (sigma_S sigma_T)^3, sigma_S^2 central.
bool check_sl2_relations(const ModularOrbit& o);

struct CuspData {
  std::vector<std::uint64_t> widths;  // cycle lengths of sigma_T, ascending
  std::uint64_t level = 1;            // lcm of the widths
  std::uint64_t base_width = 1;
};
CuspData cusp_data(const ModularOrbit& o);

// Schreier generators of the stabilizer of the base point, skipping tree
// edges: w_p * g * w_q^-1 for each point p and g in {S, T} with q = p^g.
std::vector<SL2Matrix> stabilizer_generators(const ModularOrbit& o);
std::vector<std::string> stabilizer_words(const ModularOrbit& o);

// |SL2(Z/m)| = m^3 prod_{p | m} (1 - p^-2).
std::uint64_t sl2_order(std::uint64_t m);

struct IndexOptions {
  std::uint64_t modulus_cap = 100'000;
  std::uint64_t max_block_points = 4'000'000;  // primitive vectors per prime-power block
};

// [SL2(Z/m) : <mats mod m>], through the faithful action on primitive row
// vectors of each prime-power block. Throws DomainError when a determinant
// is not 1 mod m, BoundError above the configured caps.
std::uint64_t sl2_mod_index(const std::vector<SL2Matrix>& mats, std::uint64_t m,
                            const IndexOptions& opts = {});

enum class Verdict { congruence, noncongruence, totally_noncongruence };
std::string_view to_string(Verdict v);
std::optional<Verdict> parse_verdict(std::string_view s);

struct ClosureStep {
  std::uint64_t modulus = 0;
  std::uint64_t index = 0;
  friend bool operator==(const ClosureStep&, const ClosureStep&) = default;
};

struct ClosureResult {
  std::uint64_t index_gamma = 0;
  CuspData cusps;
  std::vector<ClosureStep> schedule;  // empty when the closure was not computed
  std::uint64_t modulus_used = 0;
  std::uint64_t index_closure = 0;
  bool closure_computed = false;
  bool closure_n_sufficed = false;  // I(n) already equals the stabilized index
  Verdict verdict = Verdict::noncongruence;
  std::optional<bool> criterion_verdict;
};

// Closure index from the schedule m in {n, 2n, 4n, 6n}, n the level; the
// value is accepted only when I(2n) = I(4n) = I(6n). Throws InconclusiveError otherwise.
ClosureResult congruence_closure(const ModularOrbit& o, const IndexOptions& opts = {});

// |G| > 1 and |x|, |y|, |xy| pairwise coprime. Throws DomainError unless (x, y) generates g.
bool coprime_criterion(const PermGroup& g, const Permutation& x, const Permutation& y);

struct ClassifyOptions {
  bool audit = false;
  std::uint64_t max_orbit = kDefaultMaxOrbit;
  IndexOptions index;
};

// Runs the criterion; when it holds the verdict is totally-noncongruence and
// the closure is skipped unless audit is set, in which case the pipeline must
// agree (VerificationError otherwise).
ClosureResult classify(const PermGroup& g, const Permutation& x, const Permutation& y,
                       const ClassifyOptions& opts = {});

// Every generating pair of g up to simultaneous conjugation, canonical and sorted.
std::vector<PermPair> presentation_classes(const PermGroup& g);
// `count` distinct classes from seeded uniform pairs (fewer if g has fewer).
std::vector<PermPair> sample_presentation_classes(const PermGroup& g, std::size_t count,
                                                  std::uint64_t seed);

}  // namespace mf
