#include "mf/perm.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

#include "mf/error.hpp"
#include "mf/simd/kernels.hpp"

namespace mf {

Permutation::Permutation(std::size_t degree) : images_(degree) {
  std::iota(images_.begin(), images_.end(), Point{0});
}

Permutation::Permutation(std::vector<Point> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (Point p : images_) {
    if (p >= images_.size() || seen[p]) {
      throw DomainError("image sequence is not a bijection");
    }
    seen[p] = true;
  }
}

Permutation Permutation::from_cycles(std::size_t degree, std::string_view text) {
  std::vector<Point> img(degree);
  std::iota(img.begin(), img.end(), Point{0});
  std::vector<bool> used(degree, false);

  std::size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  skip_ws();
  while (pos < text.size()) {
    if (text[pos] != '(') throw ParseError("expected '(' in cycle notation: " + std::string(text));
    ++pos;
    std::vector<Point> cycle;
    for (;;) {
      skip_ws();
      if (pos < text.size() && text[pos] == ',') {
        ++pos;
        continue;
      }
      if (pos >= text.size()) throw ParseError("unterminated cycle: " + std::string(text));
      if (text[pos] == ')') {
        ++pos;
        break;
      }
      if (!std::isdigit(static_cast<unsigned char>(text[pos]))) {
        throw ParseError("unexpected character in cycle notation: " + std::string(text));
      }
      std::uint64_t v = 0;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
        v = v * 10 + static_cast<std::uint64_t>(text[pos] - '0');
        if (v > degree) throw ParseError("point exceeds degree " + std::to_string(degree));
        ++pos;
      }
      if (v == 0) throw ParseError("points are 1-based");
      const Point p = static_cast<Point>(v - 1);
      if (used[p]) throw ParseError("point " + std::to_string(v) + " repeated in cycles");
      used[p] = true;
      cycle.push_back(p);
    }
    for (std::size_t i = 0; i < cycle.size(); ++i) img[cycle[i]] = cycle[(i + 1) % cycle.size()];
    skip_ws();
  }
  return Permutation(std::move(img), Unchecked{});
}

Permutation Permutation::inverse() const {
  std::vector<Point> inv(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) inv[images_[i]] = static_cast<Point>(i);
  return Permutation(std::move(inv), Unchecked{});
}

Permutation Permutation::pow(std::int64_t k) const {
  if (k < 0) return inverse().pow(-k);
  Permutation result(degree());
  Permutation base = *this;
  auto e = static_cast<std::uint64_t>(k);
  while (e != 0) {
    if (e & 1u) result = result * base;
    e >>= 1;
    if (e != 0) base = base * base;
  }
  return result;
}

Permutation Permutation::conjugate_by(const Permutation& h) const {
  if (h.degree() != degree()) throw DomainError("degree mismatch in conjugation");
  const Permutation hinv = h.inverse();
  std::vector<Point> out(degree());
  simd::kernels().conjugate(images_.data(), h.images_.data(), hinv.images_.data(), out.data(),
                            degree());
  return Permutation(std::move(out), Unchecked{});
}

bool Permutation::is_identity() const noexcept {
  return simd::kernels().is_identity(images_.data(), images_.size());
}

bool Permutation::commutes_with(const Permutation& other) const {
  if (other.degree() != degree()) throw DomainError("degree mismatch");
  for (std::size_t i = 0; i < degree(); ++i) {
    if (other.images_[images_[i]] != images_[other.images_[i]]) return false;
  }
  return true;
}

std::vector<std::size_t> Permutation::cycle_lengths() const {
  std::vector<std::size_t> lengths;
  std::vector<bool> seen(degree(), false);
  for (std::size_t i = 0; i < degree(); ++i) {
    if (seen[i]) continue;
    std::size_t len = 0;
    for (std::size_t j = i; !seen[j]; j = images_[j]) {
      seen[j] = true;
      ++len;
    }
    lengths.push_back(len);
  }
  return lengths;
}

std::string Permutation::to_cycles() const {
  std::string out;
  std::vector<bool> seen(degree(), false);
  for (std::size_t i = 0; i < degree(); ++i) {
    if (seen[i] || images_[i] == i) continue;
    out += '(';
    bool first = true;
    for (std::size_t j = i; !seen[j]; j = images_[j]) {
      seen[j] = true;
      if (!first) out += ' ';
      out += std::to_string(j + 1);
      first = false;
    }
    out += ')';
  }
  return out.empty() ? "()" : out;
}

Permutation operator*(const Permutation& a, const Permutation& b) {
  if (a.degree() != b.degree()) throw DomainError("degree mismatch in product");
  std::vector<Point> out(a.degree());
  simd::kernels().compose(a.images_.data(), b.images_.data(), out.data(), a.degree());
  return Permutation(std::move(out), Permutation::Unchecked{});
}

std::strong_ordering operator<=>(const Permutation& a, const Permutation& b) noexcept {
  if (a.degree() != b.degree()) return a.degree() <=> b.degree();
  const int c = simd::kernels().compare(a.images_.data(), b.images_.data(), a.degree());
  return c < 0 ? std::strong_ordering::less
               : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

std::uint64_t element_order(const Permutation& g) {
  std::uint64_t order = 1;
  for (std::size_t len : g.cycle_lengths()) order = std::lcm(order, std::uint64_t{len});
  return order;
}

std::size_t hash_points(std::span<const Point> pts) noexcept {
  std::uint64_t h = 0x9e3779b97f4a7c15ull ^ pts.size();
  for (Point p : pts) {
    h ^= p + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    h *= 0xff51afd7ed558ccdull;
  }
  h ^= h >> 33;
  return static_cast<std::size_t>(h);
}

std::size_t PermHash::operator()(const Permutation& p) const noexcept {
  return hash_points(p.images());
}

std::size_t PermPairHash::operator()(const PermPair& p) const noexcept {
  const std::size_t a = hash_points(p.x.images());
  const std::size_t b = hash_points(p.y.images());
  return a ^ (b + 0x9e3779b97f4a7c15ull + (a << 6) + (a >> 2));
}

PermPair parse_pair(std::size_t degree, std::string_view text) {
  const auto semi = text.find(';');
  if (semi == std::string_view::npos || text.find(';', semi + 1) != std::string_view::npos) {
    throw ParseError("pair must be two cycle-notation permutations separated by ';'");
  }
  return {Permutation::from_cycles(degree, text.substr(0, semi)),
          Permutation::from_cycles(degree, text.substr(semi + 1))};
}

std::string format_pair(const PermPair& p) { return p.x.to_cycles() + ";" + p.y.to_cycles(); }

}  // namespace mf
