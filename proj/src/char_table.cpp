#include "mf/char_table.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <fstream>
#include <limits>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "mf/error.hpp"

namespace mf {
namespace {

using u64 = std::uint64_t;
using Vec = std::vector<u64>;

u64 mulm(u64 a, u64 b, u64 p) { return static_cast<u64>(static_cast<unsigned __int128>(a) * b % p); }

u64 powm(u64 a, u64 e, u64 p) {
  u64 r = 1 % p;
  for (a %= p; e; e >>= 1, a = mulm(a, a, p)) {
    if (e & 1) r = mulm(r, a, p);
  }
  return r;
}

u64 invm(u64 a, u64 p) { return powm(a, p - 2, p); }
u64 subm(u64 a, u64 b, u64 p) { return a >= b ? a - b : a + p - b; }

bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

u64 primitive_root(u64 p) {
  const auto f = factor_small(p - 1);
  for (u64 g = 2; g < p; ++g) {
    if (std::all_of(f.begin(), f.end(), [&](auto pe) { return powm(g, (p - 1) / pe.first, p) != 1; })) {
      return g;
    }
  }
  return 1;  // p == 2
}

// Subspace of F_p^K in reduced echelon form: basis[i][pivots[i]] == 1 and
// every other basis vector vanishes at pivots[i].
struct Space {
  std::vector<Vec> basis;
  std::vector<std::size_t> pivots;
};

Space echelonize(const std::vector<Vec>& vectors, u64 p) {
  Space s;
  for (Vec v : vectors) {
    for (std::size_t i = 0; i < s.basis.size(); ++i) {
      const u64 c = v[s.pivots[i]];
      if (c == 0) continue;
      for (std::size_t r = 0; r < v.size(); ++r) v[r] = subm(v[r], mulm(c, s.basis[i][r], p), p);
    }
    const auto nz = std::find_if(v.begin(), v.end(), [](u64 x) { return x != 0; });
    if (nz == v.end()) continue;
    const std::size_t piv = static_cast<std::size_t>(nz - v.begin());
    const u64 inv = invm(*nz, p);
    for (auto& x : v) x = mulm(x, inv, p);
    for (auto& b : s.basis) {
      const u64 c = b[piv];
      if (c == 0) continue;
      for (std::size_t r = 0; r < v.size(); ++r) b[r] = subm(b[r], mulm(c, v[r], p), p);
    }
    s.basis.push_back(std::move(v));
    s.pivots.push_back(piv);
  }
  return s;
}

// Characteristic polynomial (constant term first) via Hessenberg reduction.
Vec charpoly(std::vector<Vec> h, u64 p) {
  const std::size_t n = h.size();
  for (std::size_t m = 1; m + 1 < n; ++m) {
    std::size_t i = m;
    while (i < n && h[i][m - 1] == 0) ++i;
    if (i == n) continue;
    if (i != m) {
      std::swap(h[i], h[m]);
      for (auto& row : h) std::swap(row[i], row[m]);
    }
    const u64 inv = invm(h[m][m - 1], p);
    for (std::size_t r = m + 1; r < n; ++r) {
      const u64 u = mulm(h[r][m - 1], inv, p);
      if (u == 0) continue;
      for (std::size_t c = 0; c < n; ++c) h[r][c] = subm(h[r][c], mulm(u, h[m][c], p), p);
      for (std::size_t c = 0; c < n; ++c) h[c][m] = (h[c][m] + mulm(u, h[c][r], p)) % p;
    }
  }
  std::vector<Vec> polys{Vec{1}};
  for (std::size_t m = 1; m <= n; ++m) {
    Vec next(m + 1, 0);
    const Vec& prev = polys[m - 1];
    for (std::size_t d = 0; d < prev.size(); ++d) {
      next[d + 1] = (next[d + 1] + prev[d]) % p;
      next[d] = subm(next[d], mulm(h[m - 1][m - 1], prev[d], p), p);
    }
    u64 t = 1;
    for (std::size_t i = m - 1; i >= 1; --i) {
      t = mulm(t, h[i][i - 1], p);
      const u64 c = mulm(h[i - 1][m - 1], t, p);
      if (c != 0) {
        for (std::size_t d = 0; d < polys[i - 1].size(); ++d) {
          next[d] = subm(next[d], mulm(c, polys[i - 1][d], p), p);
        }
      }
    }
    polys.push_back(std::move(next));
  }
  return polys[n];
}

std::vector<u64> roots_mod_p(const Vec& poly, u64 p) {
  std::vector<u64> roots;
  for (u64 x = 0; x < p; ++x) {
    u64 acc = 0;
    for (std::size_t d = poly.size(); d-- > 0;) acc = (mulm(acc, x, p) + poly[d]) % p;
    if (acc == 0) roots.push_back(x);
  }
  return roots;
}

// Null space of a square matrix over F_p.
std::vector<Vec> null_space(std::vector<Vec> a, u64 p) {
  const std::size_t n = a.size();
  std::vector<std::size_t> pivot_col;
  std::size_t row = 0;
  for (std::size_t c = 0; c < n && row < n; ++c) {
    std::size_t r = row;
    while (r < n && a[r][c] == 0) ++r;
    if (r == n) continue;
    std::swap(a[r], a[row]);
    const u64 inv = invm(a[row][c], p);
    for (auto& x : a[row]) x = mulm(x, inv, p);
    for (std::size_t r2 = 0; r2 < n; ++r2) {
      if (r2 == row || a[r2][c] == 0) continue;
      const u64 f = a[r2][c];
      for (std::size_t c2 = 0; c2 < n; ++c2) a[r2][c2] = subm(a[r2][c2], mulm(f, a[row][c2], p), p);
    }
    pivot_col.push_back(c);
    ++row;
  }
  std::vector<Vec> out;
  std::vector<bool> is_pivot(n, false);
  for (auto c : pivot_col) is_pivot[c] = true;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    Vec v(n, 0);
    v[free] = 1;
    for (std::size_t r = 0; r < pivot_col.size(); ++r) v[pivot_col[r]] = subm(0, a[r][free], p);
    out.push_back(std::move(v));
  }
  return out;
}

Integer isqrt_floor(const Integer& n) { return boost::multiprecision::sqrt(n); }

}  // namespace

CharacterTable::CharacterTable(Integer group_order, Integer exponent, std::vector<Integer> class_sizes,
                               std::vector<std::uint64_t> class_orders,
                               std::vector<std::size_t> inverse_map,
                               std::vector<std::vector<CycInt>> values)
    : order_(std::move(group_order)),
      exponent_(std::move(exponent)),
      sizes_(std::move(class_sizes)),
      orders_(std::move(class_orders)),
      inverse_(std::move(inverse_map)),
      values_(std::move(values)) {
  const std::size_t k = sizes_.size();
  if (k == 0 || orders_.size() != k || inverse_.size() != k || values_.size() != k) {
    throw VerificationError("character table shape mismatch");
  }
  for (auto& row : values_) {
    if (row.size() != k) throw VerificationError("character table shape mismatch");
    for (std::size_t c = 0; c < k; ++c) {
      if (orders_[c] == 0 || orders_[c] % row[c].conductor() != 0) {
        throw VerificationError("value outside Q(zeta_o) for class " + std::to_string(c + 1));
      }
      row[c] = row[c].lift(orders_[c]);
    }
  }
  for (const auto& row : values_) {
    if (!row[0].is_integer() || row[0].integer_value() <= 0) {
      throw VerificationError("character degree is not a positive integer");
    }
    degrees_.push_back(row[0].integer_value());
  }
  verify();
}

void CharacterTable::verify() const {
  const std::size_t k = size();
  if (sizes_[0] != 1 || orders_[0] != 1) throw VerificationError("class 1 is not the identity class");
  Integer total = 0;
  Integer lcm = 1;
  for (std::size_t c = 0; c < k; ++c) {
    if (sizes_[c] <= 0 || order_ % sizes_[c] != 0) {
      throw VerificationError("class size does not divide group order");
    }
    total += sizes_[c];
    lcm = boost::multiprecision::lcm(lcm, Integer(orders_[c]));
    const std::size_t inv = inverse_[c];
    if (inv >= k || inverse_[inv] != c || orders_[inv] != orders_[c] || sizes_[inv] != sizes_[c]) {
      throw VerificationError("inverse class map is inconsistent at class " + std::to_string(c + 1));
    }
  }
  if (total != order_) throw VerificationError("class sizes do not sum to the group order");
  if (lcm != exponent_) throw VerificationError("exponent is not the lcm of element orders");

  for (std::size_t c = 0; c < k; ++c) {
    if (values_[0][c] != CycInt(1)) throw VerificationError("first row is not the trivial character");
  }
  if (degrees_[0] != 1) throw VerificationError("first character is not trivial");
  Integer deg2 = 0;
  for (const auto& d : degrees_) deg2 += d * d;
  if (deg2 != order_) throw VerificationError("sum of squared degrees differs from group order");

  for (std::size_t chi = 0; chi < k; ++chi) {
    for (std::size_t c = 0; c < k; ++c) {
      if (values_[chi][inverse_[c]] != values_[chi][c].conj()) {
        throw VerificationError("value on inverse class is not the conjugate (character " +
                                std::to_string(chi + 1) + ", class " + std::to_string(c + 1) + ")");
      }
    }
  }
  // conj(chi(c)) == chi(inverse(c)) from here on.
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = a; b < k; ++b) {
      CycInt row_sum;
      CycInt col_sum;
      for (std::size_t m = 0; m < k; ++m) {
        row_sum = row_sum + values_[a][m] * values_[b][inverse_[m]] * sizes_[m];
        col_sum = col_sum + values_[m][a] * values_[m][inverse_[b]];
      }
      if (row_sum != CycInt(a == b ? order_ : Integer(0))) {
        throw VerificationError("orthogonality failure: characters " + std::to_string(a + 1) +
                                " and " + std::to_string(b + 1));
      }
      if (col_sum != CycInt(a == b ? Integer(order_ / sizes_[a]) : Integer(0))) {
        throw VerificationError("orthogonality failure: classes " + std::to_string(a + 1) +
                                " and " + std::to_string(b + 1));
      }
    }
  }
}

bool operator==(const CharacterTable& a, const CharacterTable& b) {
  return a.order_ == b.order_ && a.exponent_ == b.exponent_ && a.sizes_ == b.sizes_ &&
         a.orders_ == b.orders_ && a.inverse_ == b.inverse_ && a.values_ == b.values_;
}

std::uint64_t dixon_prime(std::uint64_t order, std::uint64_t exponent, std::uint64_t limit) {
  const unsigned __int128 four_n = static_cast<unsigned __int128>(order) * 4;
  for (u64 p = exponent + 1; p < limit; p += exponent) {
    if (static_cast<unsigned __int128>(p) * p > four_n && is_prime_u64(p)) return p;
  }
  return 0;
}

std::uint64_t class_constant(const PermGroup& g, const ConjClassTable& cc, std::size_t i,
                             std::size_t j, const Permutation& z) {
  if (i >= cc.size() || j >= cc.size()) throw DomainError("class index out of range");
  if (!g.contains(z)) throw DomainError("element outside the group");
  std::uint64_t count = 0;
  for (const auto& a : cc.members(i)) {
    if (cc.class_of(a.inverse() * z) == j) ++count;
  }
  return count;
}

CharacterTable dixon_table(const PermGroup& g, const DixonOptions& opts) {
  ClassOptions co;
  co.max_order = opts.max_order;
  return dixon_table(g, conjugacy_classes(g, co), opts);
}

CharacterTable dixon_table(const PermGroup& g, const ConjClassTable& cc, const DixonOptions& opts) {
  if (g.order() > opts.max_order) {
    throw BoundError("group of order " + std::to_string(g.order()) + " exceeds character-table bound " +
                     std::to_string(opts.max_order));
  }
  const std::size_t k = cc.size();
  const u64 order = g.order();
  const u64 e = cc.exponent();
  const u64 p = dixon_prime(order, e, opts.prime_limit);
  if (p == 0) throw BoundError("no prime = 1 mod " + std::to_string(e) + " below the configured limit");

  // c[(j * k + m) * k + l] = #{(x, y) in C_j x C_m : xy = reps[l]}.
  std::vector<u64> c(k * k * k, 0);
  for (std::size_t j = 0; j < k; ++j) {
    for (const auto& x : cc.members(j)) {
      const Permutation xinv = x.inverse();
      for (std::size_t l = 0; l < k; ++l) ++c[(j * k + cc.class_of(xinv * cc.reps()[l])) * k + l];
    }
  }

  std::vector<Space> spaces;
  {
    std::vector<Vec> id(k, Vec(k, 0));
    for (std::size_t i = 0; i < k; ++i) id[i][i] = 1;
    spaces.push_back(echelonize(id, p));
  }
  for (std::size_t j = 1; j < k; ++j) {
    if (std::all_of(spaces.begin(), spaces.end(), [](const Space& s) { return s.basis.size() == 1; })) {
      break;
    }
    std::vector<Space> next;
    for (auto& s : spaces) {
      const std::size_t d = s.basis.size();
      if (d == 1) {
        next.push_back(std::move(s));
        continue;
      }
      // Matrix of M_j on the subspace, in pivot coordinates.
      std::vector<Vec> a(d, Vec(d, 0));
      std::vector<Vec> images;
      for (std::size_t col = 0; col < d; ++col) {
        Vec img(k, 0);
        for (std::size_t m = 0; m < k; ++m) {
          u64 acc = 0;
          for (std::size_t l = 0; l < k; ++l) {
            const u64 coef = c[(j * k + m) * k + l];
            if (coef) acc = (acc + mulm(coef % p, s.basis[col][l], p)) % p;
          }
          img[m] = acc;
        }
        for (std::size_t row = 0; row < d; ++row) a[row][col] = img[s.pivots[row]];
      }
      bool scalar = true;
      for (std::size_t r = 0; r < d && scalar; ++r) {
        for (std::size_t q = 0; q < d; ++q) {
          if ((r == q && a[r][q] != a[0][0]) || (r != q && a[r][q] != 0)) {
            scalar = false;
            break;
          }
        }
      }
      if (scalar) {
        next.push_back(std::move(s));
        continue;
      }
      std::size_t found = 0;
      for (u64 lambda : roots_mod_p(charpoly(a, p), p)) {
        auto shifted = a;
        for (std::size_t r = 0; r < d; ++r) shifted[r][r] = subm(shifted[r][r], lambda, p);
        std::vector<Vec> vecs;
        for (const auto& x : null_space(shifted, p)) {
          Vec w(k, 0);
          for (std::size_t col = 0; col < d; ++col) {
            if (x[col] == 0) continue;
            for (std::size_t r = 0; r < k; ++r) w[r] = (w[r] + mulm(x[col], s.basis[col][r], p)) % p;
          }
          vecs.push_back(std::move(w));
        }
        found += vecs.size();
        next.push_back(echelonize(vecs, p));
      }
      if (found != d) throw VerificationError("class matrix does not split over F_" + std::to_string(p));
    }
    spaces = std::move(next);
  }
  if (spaces.size() != k) throw VerificationError("class matrices do not separate characters");

  const u64 z = powm(primitive_root(p), (p - 1) / e, p);
  std::vector<std::vector<std::size_t>> power_classes(k);
  for (std::size_t l = 0; l < k; ++l) {
    for (u64 t = 0; t < cc.orders()[l]; ++t) {
      power_classes[l].push_back(cc.power_class(l, static_cast<std::int64_t>(t)));
    }
  }

  std::vector<std::vector<CycInt>> rows;
  const Integer bound = isqrt_floor(Integer(order));
  for (const auto& s : spaces) {
    Vec omega = s.basis[0];
    if (omega[0] == 0) throw VerificationError("eigenvector vanishes on the identity class");
    const u64 inv0 = invm(omega[0], p);
    for (auto& x : omega) x = mulm(x, inv0, p);

    u64 norm = 0;
    for (std::size_t l = 0; l < k; ++l) {
      norm = (norm + mulm(mulm(omega[l], omega[cc.inverse_map()[l]], p), invm(cc.sizes()[l] % p, p), p)) % p;
    }
    const u64 d2 = mulm(order % p, invm(norm, p), p);
    u64 degree = 0;
    for (u64 d = 1; d <= static_cast<u64>(bound); ++d) {
      if (mulm(d, d, p) == d2) {
        degree = d;
        break;
      }
    }
    if (degree == 0) throw VerificationError("no integer degree matches the mod-p norm");

    Vec chi(k);
    for (std::size_t l = 0; l < k; ++l) chi[l] = mulm(mulm(omega[l], degree, p), invm(cc.sizes()[l] % p, p), p);

    std::vector<CycInt> row;
    for (std::size_t l = 0; l < k; ++l) {
      const u64 o = cc.orders()[l];
      const u64 zo = powm(z, e / o, p);
      const u64 inv_o = invm(o % p, p);
      std::vector<Integer> mult(o);
      for (u64 r = 0; r < o; ++r) {
        const u64 step = powm(zo, (o - r) % o, p);
        u64 w = 1;
        u64 acc = 0;
        for (u64 t = 0; t < o; ++t) {
          acc = (acc + mulm(chi[power_classes[l][t]], w, p)) % p;
          w = mulm(w, step, p);
        }
        const u64 m = mulm(acc, inv_o, p);
        if (m > degree) throw VerificationError("eigenvalue multiplicity out of range");
        mult[r] = m;
      }
      row.push_back(CycInt::from_coefficients(o, mult));
    }
    rows.push_back(std::move(row));
  }

  auto is_trivial = [](const std::vector<CycInt>& r) {
    return std::all_of(r.begin(), r.end(), [](const CycInt& v) { return v == CycInt(1); });
  };
  std::sort(rows.begin(), rows.end(), [&](const auto& a, const auto& b) {
    const bool ta = is_trivial(a);
    const bool tb = is_trivial(b);
    if (ta != tb) return ta;
    const Integer da = a[0].integer_value();
    const Integer db = b[0].integer_value();
    if (da != db) return da < db;
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), lex_less);
  });

  std::vector<Integer> sizes(cc.sizes().begin(), cc.sizes().end());
  return CharacterTable(Integer(order), Integer(e), std::move(sizes), cc.orders(), cc.inverse_map(),
                        std::move(rows));
}

namespace {

void check_indices(const CharacterTable& t, std::size_t i, std::size_t j, std::size_t k) {
  if (i >= t.size() || j >= t.size() || k >= t.size()) throw DomainError("class index out of range");
}

// sum_chi chi(c_i) chi(c_j) v_chi / chi(1), with v_chi = chi(c_k) or its
// conjugate. Exact: scaled by the lcm of the degrees the sum is a rational
// algebraic integer.
Rational character_sum(const CharacterTable& t, std::size_t i, std::size_t j, std::size_t k,
                       bool conjugate_k) {
  const std::size_t kk = conjugate_k ? t.inverse_map()[k] : k;
  Integer scale = 1;
  for (const auto& d : t.degrees()) scale = boost::multiprecision::lcm(scale, d);
  CycInt sum;
  for (std::size_t chi = 0; chi < t.size(); ++chi) {
    sum = sum + t.value(chi, i) * t.value(chi, j) * t.value(chi, kk) * Integer(scale / t.degrees()[chi]);
  }
  if (!sum.is_integer()) throw VerificationError("character sum is not rational; table is inconsistent");
  return Rational(sum.integer_value(), scale);
}

}  // namespace

TripleCount frobenius_count(const CharacterTable& t, std::size_t i, std::size_t j, std::size_t k) {
  check_indices(t, i, j, k);
  TripleCount r;
  r.class_indices = {i, j, k};
  r.rational_sum = character_sum(t, i, j, k, true);
  r.direct_sum = character_sum(t, i, j, k, false);
  const Rational count = Rational(t.class_sizes()[i] * t.class_sizes()[j], t.group_order()) * r.rational_sum;
  if (boost::multiprecision::denominator(count) != 1 || count < 0) {
    throw VerificationError("Frobenius count is not a non-negative integer");
  }
  r.count = boost::multiprecision::numerator(count);
  return r;
}

Sum1Bound sum1_bound(const CharacterTable& t, std::size_t i, std::size_t j, std::size_t k) {
  check_indices(t, i, j, k);
  Sum1Bound b;
  b.exact = boost::multiprecision::abs(character_sum(t, i, j, k, false) - 1);

  std::complex<long double> z = 0;
  long double magnitude = 0;
  std::size_t terms = 1;
  for (std::size_t chi = 1; chi < t.size(); ++chi) {
    const long double d = static_cast<long double>(t.degrees()[chi]);
    const auto& a = t.value(chi, i);
    const auto& bb = t.value(chi, j);
    const auto& c = t.value(chi, k);
    z += a.to_complex() * bb.to_complex() * c.to_complex() / d;
    magnitude += a.abs_bound() * bb.abs_bound() * c.abs_bound() / d;
    terms = std::max({terms, a.coeffs().size(), bb.coeffs().size(), c.coeffs().size()});
  }
  // Each embedded value carries O(terms) roundings; products and the outer
  // sum add a bounded number more. The slack factor is deliberately generous.
  const long double err =
      64.0L * LDBL_EPSILON * static_cast<long double>(terms + t.size() + 8) * (magnitude + 1);
  b.approx = std::abs(z);
  b.lower = std::max(0.0L, std::nextafter(b.approx - err, -1.0L));
  b.upper = std::nextafter(b.approx + err, 2 * b.approx + 2 * err + 1);
  const long double exact = static_cast<long double>(b.exact);
  if (exact < b.lower || exact > b.upper) {
    throw VerificationError("floating enclosure of the character sum misses the exact value");
  }
  return b;
}

void write_table(std::ostream& out, const CharacterTable& t) {
  out << "format mf-chartab 1\n";
  out << "order " << t.group_order() << "\n";
  out << "exponent " << t.exponent() << "\n";
  out << "classes " << t.size() << "\n";
  out << "sizes";
  for (const auto& s : t.class_sizes()) out << ' ' << s;
  out << "\norders";
  for (auto o : t.class_orders()) out << ' ' << o;
  out << "\ninverses";
  for (auto v : t.inverse_map()) out << ' ' << v + 1;
  out << '\n';
  for (std::size_t chi = 0; chi < t.size(); ++chi) {
    for (std::size_t c = 0; c < t.size(); ++c) out << (c ? " " : "") << t.value(chi, c).serialize();
    out << '\n';
  }
}

void write_table(const std::filesystem::path& path, const CharacterTable& t) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  write_table(out, t);
}

namespace {

Integer parse_integer(const std::string& tok, std::size_t line) {
  std::size_t i = (!tok.empty() && tok[0] == '-') ? 1 : 0;
  if (i == tok.size()) throw ParseError("expected an integer, got '" + tok + "'", line);
  for (; i < tok.size(); ++i) {
    if (tok[i] < '0' || tok[i] > '9') throw ParseError("expected an integer, got '" + tok + "'", line);
  }
  return Integer(tok);
}

}  // namespace

CharacterTable read_table(std::istream& in) {
  std::vector<std::pair<std::size_t, std::vector<std::string>>> lines;
  std::string text;
  for (std::size_t n = 1; std::getline(in, text); ++n) {
    if (const auto hash = text.find('#'); hash != std::string::npos) text.erase(hash);
    std::istringstream ss(text);
    std::vector<std::string> toks;
    for (std::string tok; ss >> tok;) toks.push_back(tok);
    if (!toks.empty()) lines.emplace_back(n, std::move(toks));
  }
  std::size_t pos = 0;
  auto expect = [&](const std::string& key, std::size_t count) -> const std::vector<std::string>& {
    if (pos >= lines.size()) throw ParseError("unexpected end of table, expected '" + key + "'");
    const auto& [n, toks] = lines[pos];
    if (toks[0] != key) throw ParseError("expected '" + key + "', got '" + toks[0] + "'", n);
    if (count != 0 && toks.size() != count + 1) {
      throw ParseError("'" + key + "' needs " + std::to_string(count) + " fields", n);
    }
    ++pos;
    return toks;
  };

  {
    const auto& f = expect("format", 2);
    if (f[1] != "mf-chartab" || f[2] != "1") {
      throw ParseError("unsupported table format '" + f[1] + " " + f[2] + "'", lines[pos - 1].first);
    }
  }
  Integer order = parse_integer(expect("order", 1)[1], lines[pos - 1].first);
  Integer exponent = parse_integer(expect("exponent", 1)[1], lines[pos - 1].first);
  const Integer kbig = parse_integer(expect("classes", 1)[1], lines[pos - 1].first);
  if (kbig < 1 || kbig > 100'000) throw ParseError("bad class count", lines[pos - 1].first);
  const auto k = static_cast<std::size_t>(kbig);

  std::vector<Integer> sizes;
  {
    const std::size_t n = pos < lines.size() ? lines[pos].first : 0;
    const auto& toks = expect("sizes", k);
    for (std::size_t c = 1; c <= k; ++c) sizes.push_back(parse_integer(toks[c], n));
  }
  std::vector<std::uint64_t> orders;
  {
    const std::size_t n = pos < lines.size() ? lines[pos].first : 0;
    const auto& toks = expect("orders", k);
    for (std::size_t c = 1; c <= k; ++c) {
      const Integer v = parse_integer(toks[c], n);
      if (v < 1 || v > Integer(std::numeric_limits<std::uint32_t>::max())) {
        throw ParseError("element order out of range", n);
      }
      orders.push_back(static_cast<std::uint64_t>(v));
    }
  }
  std::vector<std::size_t> inverses;
  {
    const std::size_t n = pos < lines.size() ? lines[pos].first : 0;
    const auto& toks = expect("inverses", k);
    for (std::size_t c = 1; c <= k; ++c) {
      const Integer v = parse_integer(toks[c], n);
      if (v < 1 || v > Integer(k)) throw ParseError("inverse class out of range", n);
      inverses.push_back(static_cast<std::size_t>(v) - 1);
    }
  }
  std::vector<std::vector<CycInt>> values;
  for (std::size_t chi = 0; chi < k; ++chi) {
    if (pos >= lines.size()) throw ParseError("table has fewer than " + std::to_string(k) + " character rows");
    const auto& [n, toks] = lines[pos++];
    if (toks.size() != k) throw ParseError("character row needs " + std::to_string(k) + " values", n);
    std::vector<CycInt> row;
    for (std::size_t c = 0; c < k; ++c) {
      try {
        row.push_back(CycInt::parse(orders[c], toks[c]));
      } catch (const ParseError& e) {
        throw ParseError(e.what(), n);
      }
    }
    values.push_back(std::move(row));
  }
  if (pos != lines.size()) throw ParseError("trailing content after character rows", lines[pos].first);
  return CharacterTable(std::move(order), std::move(exponent), std::move(sizes), std::move(orders),
                        std::move(inverses), std::move(values));
}

CharacterTable read_table(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read " + path.string());
  return read_table(in);
}

}  // namespace mf
