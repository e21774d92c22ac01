#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mf {

using Point = std::uint32_t;

// A permutation of {0, ..., degree-1}, stored as its image sequence.
//
// Products follow the left-to-right convention: (a * b) applies a first,
// then b, so i^(ab) = (i^a)^b. Cycle-notation text is 1-based.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::size_t degree);
  // Throws DomainError unless images is a bijection on {0, ..., size-1}.
  explicit Permutation(std::vector<Point> images);

  // Parses "(1 2 3)(4 5)" or "(1,2,3)(4,5)"; "()" is the identity.
  static Permutation from_cycles(std::size_t degree, std::string_view text);

  std::size_t degree() const noexcept { return images_.size(); }
  Point operator[](std::size_t i) const noexcept { return images_[i]; }
  std::span<const Point> images() const noexcept { return images_; }

  Permutation inverse() const;
  Permutation pow(std::int64_t k) const;
  // h^-1 * this * h, i.e. the element mapping i^h to (i^this)^h.
  Permutation conjugate_by(const Permutation& h) const;
  bool is_identity() const noexcept;
  bool commutes_with(const Permutation& other) const;

  std::vector<std::size_t> cycle_lengths() const;  // fixed points included
  std::string to_cycles() const;                   // canonical 1-based form

  friend Permutation operator*(const Permutation& a, const Permutation& b);
  friend bool operator==(const Permutation& a, const Permutation& b) noexcept {
    return a.images_ == b.images_;
  }
  // Lexicographic on image sequences (degrees compared first).
  friend std::strong_ordering operator<=>(const Permutation& a,
                                          const Permutation& b) noexcept;

 private:
  struct Unchecked {};
  Permutation(std::vector<Point> images, Unchecked) : images_(std::move(images)) {}
  friend class PermBuilder;

  std::vector<Point> images_;
};

// Raw construction for hot paths that already guarantee a bijection.
class PermBuilder {
 public:
  static Permutation adopt(std::vector<Point> images) {
    return Permutation(std::move(images), Permutation::Unchecked{});
  }
};

std::uint64_t element_order(const Permutation& g);

struct PermHash {
  std::size_t operator()(const Permutation& p) const noexcept;
};

std::size_t hash_points(std::span<const Point> pts) noexcept;

// Pairs of permutations: "x;y" in cycle notation.
struct PermPair {
  Permutation x;
  Permutation y;
  friend bool operator==(const PermPair&, const PermPair&) = default;
  friend auto operator<=>(const PermPair&, const PermPair&) = default;
};

struct PermPairHash {
  std::size_t operator()(const PermPair& p) const noexcept;
};

PermPair parse_pair(std::size_t degree, std::string_view text);
std::string format_pair(const PermPair& p);

}  // namespace mf
