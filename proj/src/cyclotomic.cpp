#include "mf/cyclotomic.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <algorithm>
#include <numeric>

#include "mf/error.hpp"

namespace mf {

std::vector<std::pair<std::uint64_t, unsigned>> factor_small(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, unsigned>> f;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    f.emplace_back(p, e);
  }
  if (n > 1) f.emplace_back(n, 1);
  return f;
}

std::uint64_t euler_phi(std::uint64_t n) {
  std::uint64_t phi = n;
  for (auto [p, e] : factor_small(n)) phi = phi / p * (p - 1);
  return phi;
}

int mobius(std::uint64_t n) {
  int mu = 1;
  for (auto [p, e] : factor_small(n)) {
    if (e > 1) return 0;
    mu = -mu;
  }
  return mu;
}

const std::vector<std::int64_t>& cyclotomic_polynomial(std::uint64_t n) {
  static std::recursive_mutex mu;
  static std::map<std::uint64_t, std::vector<std::int64_t>> cache;
  std::lock_guard lock(mu);
  if (auto it = cache.find(n); it != cache.end()) return it->second;

  // x^n - 1 divided by Phi_d for every proper divisor d.
  std::vector<std::int64_t> poly(n + 1, 0);
  poly[0] = -1;
  poly[n] = 1;
  for (std::uint64_t d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    const std::vector<std::int64_t>& div = cyclotomic_polynomial(d);
    const std::size_t dd = div.size() - 1;
    std::vector<std::int64_t> q(poly.size() - dd, 0);
    for (std::size_t i = poly.size(); i-- > dd;) {
      const std::int64_t c = poly[i];  // divisor is monic
      q[i - dd] = c;
      for (std::size_t j = 0; j <= dd; ++j) poly[i - dd + j] -= c * div[j];
    }
    poly = std::move(q);
  }
  return cache.emplace(n, std::move(poly)).first->second;
}

std::vector<Integer> CycInt::reduce(std::uint64_t n, std::vector<Integer> poly) {
  const auto& phi_poly = cyclotomic_polynomial(n);
  const std::size_t deg = phi_poly.size() - 1;
  for (std::size_t i = poly.size(); i-- > deg;) {
    if (poly[i] == 0) continue;
    const Integer c = poly[i];
    for (std::size_t j = 0; j <= deg; ++j) poly[i - deg + j] -= c * phi_poly[j];
  }
  poly.resize(deg);
  return poly;
}

CycInt::CycInt(Integer value, std::uint64_t conductor) : n_(conductor) {
  if (conductor == 0) throw DomainError("conductor must be positive");
  c_.assign(euler_phi(conductor), Integer(0));
  c_[0] = std::move(value);
}

CycInt CycInt::root_of_unity(std::uint64_t n, std::uint64_t k) {
  std::vector<Integer> poly(n, Integer(0));
  poly[k % n] = 1;
  return CycInt(n, reduce(n, std::move(poly)));
}

CycInt CycInt::from_coefficients(std::uint64_t n, std::span<const Integer> coeffs) {
  if (n == 0) throw DomainError("conductor must be positive");
  std::vector<Integer> poly(n, Integer(0));
  for (std::size_t j = 0; j < coeffs.size(); ++j) poly[j % n] += coeffs[j];
  return CycInt(n, reduce(n, std::move(poly)));
}

CycInt CycInt::parse(std::uint64_t n, std::string_view text) {
  std::vector<Integer> coeffs;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find(',', pos), text.size());
    const std::string item(text.substr(pos, end - pos));
    if (item.empty()) throw ParseError("empty coefficient in '" + std::string(text) + "'");
    std::size_t i = (item[0] == '-' || item[0] == '+') ? 1 : 0;
    if (i == item.size()) throw ParseError("bad coefficient '" + item + "'");
    for (; i < item.size(); ++i) {
      if (item[i] < '0' || item[i] > '9') throw ParseError("bad coefficient '" + item + "'");
    }
    coeffs.emplace_back(item[0] == '+' ? item.substr(1) : item);
    pos = end + 1;
  }
  if (coeffs.size() > n) {
    throw ParseError("coefficient vector longer than conductor " + std::to_string(n));
  }
  return from_coefficients(n, coeffs);
}

CycInt CycInt::lift(std::uint64_t m) const {
  if (m == n_) return *this;
  if (m % n_ != 0) throw DomainError("lift target must be a multiple of the conductor");
  std::vector<Integer> poly(m, Integer(0));
  const std::uint64_t step = m / n_;
  for (std::size_t j = 0; j < c_.size(); ++j) poly[j * step] = c_[j];
  return CycInt(m, reduce(m, std::move(poly)));
}

CycInt CycInt::conj() const {
  std::vector<Integer> poly(n_, Integer(0));
  for (std::size_t j = 0; j < c_.size(); ++j) poly[(n_ - j) % n_] += c_[j];
  return CycInt(n_, reduce(n_, std::move(poly)));
}

bool CycInt::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](const Integer& v) { return v == 0; });
}

bool CycInt::is_integer() const {
  return std::all_of(c_.begin() + 1, c_.end(), [](const Integer& v) { return v == 0; });
}

Integer CycInt::integer_value() const {
  if (!is_integer()) throw DomainError("cyclotomic value is not an integer");
  return c_[0];
}

std::complex<long double> CycInt::to_complex() const {
  std::complex<long double> z = 0;
  for (std::size_t j = 0; j < c_.size(); ++j) {
    if (c_[j] == 0) continue;
    const long double angle =
        2.0L * std::numbers::pi_v<long double> * static_cast<long double>(j) / static_cast<long double>(n_);
    z += static_cast<long double>(c_[j]) * std::complex<long double>(std::cos(angle), std::sin(angle));
  }
  return z;
}

long double CycInt::abs_bound() const {
  long double s = 0;
  for (const auto& v : c_) s += std::fabs(static_cast<long double>(v));
  return s;
}

std::string CycInt::serialize() const {
  std::size_t len = c_.size();
  while (len > 1 && c_[len - 1] == 0) --len;
  std::string out;
  for (std::size_t j = 0; j < len; ++j) {
    if (j) out += ',';
    out += c_[j].str();
  }
  return out;
}

CycInt CycInt::operator-() const {
  CycInt r = *this;
  for (auto& v : r.c_) v = -v;
  return r;
}

CycInt operator+(const CycInt& a, const CycInt& b) {
  const std::uint64_t m = std::lcm(a.n_, b.n_);
  CycInt r = a.lift(m);
  const CycInt bb = b.lift(m);
  for (std::size_t j = 0; j < r.c_.size(); ++j) r.c_[j] += bb.c_[j];
  return r;
}

CycInt operator-(const CycInt& a, const CycInt& b) { return a + (-b); }

CycInt operator*(const CycInt& a, const CycInt& b) {
  if (a.is_integer()) return b * a.c_[0];
  if (b.is_integer()) return a * b.c_[0];
  const std::uint64_t m = std::lcm(a.n_, b.n_);
  const CycInt aa = a.lift(m);
  const CycInt bb = b.lift(m);
  std::vector<Integer> poly(m, Integer(0));
  for (std::size_t i = 0; i < aa.c_.size(); ++i) {
    if (aa.c_[i] == 0) continue;
    for (std::size_t j = 0; j < bb.c_.size(); ++j) {
      if (bb.c_[j] == 0) continue;
      poly[(i + j) % m] += aa.c_[i] * bb.c_[j];
    }
  }
  return CycInt(m, CycInt::reduce(m, std::move(poly)));
}

CycInt operator*(const CycInt& a, const Integer& k) {
  CycInt r = a;
  for (auto& v : r.c_) v *= k;
  return r;
}

bool operator==(const CycInt& a, const CycInt& b) {
  if (a.n_ == b.n_) return a.c_ == b.c_;
  const std::uint64_t m = std::lcm(a.n_, b.n_);
  return a.lift(m).c_ == b.lift(m).c_;
}

bool lex_less(const CycInt& a, const CycInt& b) {
  if (a.n_ != b.n_) return a.n_ < b.n_;
  return a.c_ < b.c_;
}

Rational trace_rational(const CycInt& x) {
  // Tr(zeta_N^j) is the Ramanujan sum c_N(j) = mu(N/g) phi(N)/phi(N/g), g = gcd(j, N).
  const std::uint64_t n = x.conductor();
  Rational sum = 0;
  for (std::size_t j = 0; j < x.coeffs().size(); ++j) {
    if (x.coeffs()[j] == 0) continue;
    const std::uint64_t q = n / std::gcd<std::uint64_t>(j, n);
    const int mu = mobius(q);
    if (mu == 0) continue;
    sum += Rational(x.coeffs()[j] * mu, Integer(euler_phi(q)));
  }
  return sum;
}

}  // namespace mf
