#pragma once

// Exact arithmetic in cyclotomic fields Q(zeta_n), power basis modulo the
// n-th cyclotomic polynomial.

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "cmcurves/numeric_util.hpp"

namespace cmcurves {

struct DivisionByZero : std::domain_error {
  DivisionByZero() : std::domain_error("DivisionByZero") {}
};
struct BadExponent : std::domain_error {
  explicit BadExponent(const std::string& w) : std::domain_error("BadExponent: " + w) {}
};

namespace detail {

using Qpoly = std::vector<Rational>;  // coeff[i] of x^i

inline void poly_trim(Qpoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline Qpoly poly_mul(const Qpoly& a, const Qpoly& b) {
  if (a.empty() || b.empty()) return {};
  Qpoly c(a.size() + b.size() - 1, Rational(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  poly_trim(c);
  return c;
}

// a = q*b + r over Q, b != 0.
inline void poly_divmod(Qpoly a, const Qpoly& b, Qpoly& q, Qpoly& r) {
  if (b.empty()) throw DivisionByZero();
  q.assign(a.size() > b.size() ? a.size() - b.size() + 1 : 1, Rational(0));
  while (a.size() >= b.size() && !a.empty()) {
    Rational f = a.back() / b.back();
    size_t shift = a.size() - b.size();
    q[shift] = f;
    for (size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
    poly_trim(a);
  }
  poly_trim(q);
  r = std::move(a);
}

// Extended Euclid: g = gcd(a,b) monic, with s*a + t*b = g.
inline void poly_gcdext(Qpoly a, Qpoly b, Qpoly& g, Qpoly& s, Qpoly& t) {
  Qpoly s0 = {Rational(1)}, s1 = {}, t0 = {}, t1 = {Rational(1)};
  poly_trim(a);
  poly_trim(b);
  while (!b.empty()) {
    Qpoly q, r;
    poly_divmod(a, b, q, r);
    Qpoly qs = poly_mul(q, s1), qt = poly_mul(q, t1);
    Qpoly s2 = s0, t2 = t0;
    s2.resize(std::max(s2.size(), qs.size()), Rational(0));
    for (size_t i = 0; i < qs.size(); ++i) s2[i] -= qs[i];
    t2.resize(std::max(t2.size(), qt.size()), Rational(0));
    for (size_t i = 0; i < qt.size(); ++i) t2[i] -= qt[i];
    poly_trim(s2);
    poly_trim(t2);
    a = std::move(b);
    b = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (a.empty()) throw DivisionByZero();
  Rational lead = a.back();
  for (auto& c : a) c /= lead;
  for (auto& c : s0) c /= lead;
  for (auto& c : t0) c /= lead;
  g = std::move(a);
  s = std::move(s0);
  t = std::move(t0);
}

struct ConductorData {
  long n = 0;
  long phi = 0;
  Qpoly phi_poly;                      // Phi_n, monic, degree phi
  std::vector<Qpoly> power_reduction;  // x^(phi+i) mod Phi_n, each of size phi
};

inline Qpoly cyclotomic_poly_raw(long n) {
  // x^n - 1 divided by the product of Phi_d over proper divisors d of n.
  if (n == 1) return {Rational(-1), Rational(1)};
  Qpoly num(n + 1, Rational(0));
  num[0] = -1;
  num[n] = 1;
  Qpoly den = {Rational(1)};
  for (long d = 1; d < n; ++d)
    if (n % d == 0) den = poly_mul(den, cyclotomic_poly_raw(d));
  Qpoly q, r;
  poly_divmod(num, den, q, r);
  if (!r.empty()) throw std::logic_error("cyclotomic polynomial division not exact");
  return q;
}

inline const ConductorData& conductor_data(long n) {
  static std::map<long, ConductorData> cache;
  static std::mutex mtx;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  if (n < 1) throw std::invalid_argument("conductor must be positive");
  ConductorData d;
  d.n = n;
  d.phi_poly = cyclotomic_poly_raw(n);
  d.phi = static_cast<long>(d.phi_poly.size()) - 1;
  // x^e mod Phi_n for e in [phi, limit)
  long limit = std::max<long>(n, 2 * d.phi - 1);
  Qpoly cur(d.phi, Rational(0));  // x^(phi-1) shifted once below
  // start from x^(phi-1)
  if (d.phi > 0) cur[d.phi - 1] = 1;
  for (long e = d.phi; e < limit; ++e) {
    // multiply by x and reduce
    Rational lead = d.phi > 0 ? cur[d.phi - 1] : Rational(0);
    Qpoly next(d.phi, Rational(0));
    for (long i = d.phi - 1; i > 0; --i) next[i] = cur[i - 1];
    if (d.phi > 0) next[0] = 0;
    if (lead != 0)
      for (long i = 0; i < d.phi; ++i) next[i] -= lead * d.phi_poly[i];
    d.power_reduction.push_back(next);
    cur = std::move(next);
  }
  return cache.emplace(n, std::move(d)).first->second;
}

}  // namespace detail

inline long phi_of(long n) { return detail::conductor_data(n).phi; }

/// An exact element of Q(zeta_n) in the power basis modulo Phi_n.
class CycloElement {
 public:
  CycloElement() : conductor_(1), coeffs_(1, Rational(0)) {}

  CycloElement(long conductor, std::vector<Rational> coeffs)
      : conductor_(conductor), coeffs_(std::move(coeffs)) {
    if (static_cast<long>(coeffs_.size()) != phi_of(conductor_))
      throw std::invalid_argument("CycloElement: coefficient vector has wrong length");
  }

  static CycloElement zero(long n = 1) {
    return CycloElement(n, std::vector<Rational>(phi_of(n), Rational(0)));
  }
  static CycloElement one(long n = 1) { return from_rational(Rational(1), n); }

  static CycloElement from_rational(const Rational& r, long n = 1) {
    std::vector<Rational> c(phi_of(n), Rational(0));
    c[0] = r;
    return CycloElement(n, std::move(c));
  }

  /// zeta_n^e
  static CycloElement root_of_unity(long n, long e) {
    return from_power(n, mod_reduce(e, n), Rational(1));
  }

  /// sum of coeff * zeta_n^e over the given (exponent, coefficient) pairs
  static CycloElement from_exponents(long n, const std::map<long, Rational>& terms) {
    CycloElement x = zero(n);
    for (const auto& [e, c] : terms) x.add_power(mod_reduce(e, n), c);
    return x;
  }

  long conductor() const { return conductor_; }
  const std::vector<Rational>& coeffs() const { return coeffs_; }

  bool is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return c == 0; });
  }

  bool is_rational() const {
    for (size_t i = 1; i < coeffs_.size(); ++i)
      if (coeffs_[i] != 0) return false;
    return true;
  }

  Rational rational_value() const {
    if (!is_rational()) throw std::domain_error("CycloElement: not rational");
    return coeffs_[0];
  }

  /// Re-express in Q(zeta_N); N must be a multiple of the conductor.
  CycloElement promote(long target) const {
    if (target == conductor_) return *this;
    if (target % conductor_ != 0)
      throw std::invalid_argument("CycloElement::promote: target not a multiple of conductor");
    long scale = target / conductor_;
    CycloElement out = zero(target);
    for (size_t j = 0; j < coeffs_.size(); ++j)
      if (coeffs_[j] != 0) out.add_power(mod_reduce(static_cast<long>(j) * scale, target), coeffs_[j]);
    return out;
  }

  friend CycloElement operator+(const CycloElement& a, const CycloElement& b) {
    if (a.conductor_ != b.conductor_) {
      auto [x, y] = aligned(a, b);
      return x + y;
    }
    CycloElement x = a;
    for (size_t i = 0; i < x.coeffs_.size(); ++i) x.coeffs_[i] += b.coeffs_[i];
    return x;
  }
  friend CycloElement operator-(const CycloElement& a, const CycloElement& b) {
    if (a.conductor_ != b.conductor_) {
      auto [x, y] = aligned(a, b);
      return x - y;
    }
    CycloElement x = a;
    for (size_t i = 0; i < x.coeffs_.size(); ++i) x.coeffs_[i] -= b.coeffs_[i];
    return x;
  }
  CycloElement operator-() const {
    CycloElement x = *this;
    for (auto& c : x.coeffs_) c = -c;
    return x;
  }

  friend CycloElement operator*(const CycloElement& a, const CycloElement& b) {
    if (a.conductor_ != b.conductor_) {
      auto [x, y] = aligned(a, b);
      return x * y;
    }
    const auto& cd = detail::conductor_data(a.conductor_);
    long phi = cd.phi;
    std::vector<Rational> prod(2 * phi - 1 > 0 ? 2 * phi - 1 : 1, Rational(0));
    for (long i = 0; i < phi; ++i) {
      if (a.coeffs_[i] == 0) continue;
      for (long j = 0; j < phi; ++j)
        if (b.coeffs_[j] != 0) prod[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    CycloElement out = zero(a.conductor_);
    for (long e = 0; e < static_cast<long>(prod.size()); ++e)
      if (prod[e] != 0) out.add_power_reduced(e, prod[e], cd);
    return out;
  }

  friend CycloElement operator*(const Rational& r, const CycloElement& a) {
    CycloElement x = a;
    for (auto& c : x.coeffs_) c *= r;
    return x;
  }

  CycloElement inverse() const {
    if (is_zero()) throw DivisionByZero();
    const auto& cd = detail::conductor_data(conductor_);
    detail::Qpoly a(coeffs_.begin(), coeffs_.end());
    detail::poly_trim(a);
    detail::Qpoly g, s, t;
    detail::poly_gcdext(a, cd.phi_poly, g, s, t);
    if (g.size() != 1) throw std::logic_error("CycloElement::inverse: gcd with Phi_n not constant");
    s.resize(cd.phi, Rational(0));
    return CycloElement(conductor_, std::move(s));
  }

  friend CycloElement operator/(const CycloElement& a, const CycloElement& b) {
    auto [x, y] = aligned(a, b);
    return x * y.inverse();
  }

  /// Galois action zeta -> zeta^t; requires gcd(t, n) = 1.
  CycloElement galois(long t) const {
    long tm = mod_reduce(t, conductor_);
    if (conductor_ > 1 && std::gcd(tm, conductor_) != 1)
      throw BadExponent("galois exponent not coprime to conductor");
    CycloElement out = zero(conductor_);
    for (size_t j = 0; j < coeffs_.size(); ++j)
      if (coeffs_[j] != 0) out.add_power(mod_reduce(static_cast<long>(j) * tm, conductor_), coeffs_[j]);
    return out;
  }

  CycloElement conjugate() const { return conductor_ == 1 ? *this : galois(conductor_ - 1); }

  bool operator==(const CycloElement& o) const {
    if (conductor_ == o.conductor_) return coeffs_ == o.coeffs_;
    auto [x, y] = aligned(*this, o);
    return x.coeffs_ == y.coeffs_;
  }
  bool operator!=(const CycloElement& o) const { return !(*this == o); }

  /// Rendered as a sum of zeta(n)^j terms (serialization grammar).
  std::string to_string() const {
    std::ostringstream os;
    bool first = true;
    for (size_t j = 0; j < coeffs_.size(); ++j) {
      if (coeffs_[j] == 0) continue;
      Rational c = coeffs_[j];
      if (!first) os << (c < 0 ? " - " : " + ");
      else if (c < 0) os << "-";
      first = false;
      Rational ac = abs(c);
      if (j == 0) os << ac.get_str();
      else {
        if (ac != 1) os << ac.get_str() << "*";
        os << "zeta(" << conductor_ << ")";
        if (j > 1) os << "^" << j;
      }
    }
    if (first) os << "0";
    return os.str();
  }

 private:
  static CycloElement from_power(long n, long e, const Rational& c) {
    CycloElement x = zero(n);
    x.add_power(e, c);
    return x;
  }

  void add_power(long e, const Rational& c) {
    add_power_reduced(e, c, detail::conductor_data(conductor_));
  }

  void add_power_reduced(long e, const Rational& c, const detail::ConductorData& cd) {
    if (e < cd.phi) {
      coeffs_[e] += c;
      return;
    }
    const auto& row = cd.power_reduction[e - cd.phi];
    for (long i = 0; i < cd.phi; ++i)
      if (row[i] != 0) coeffs_[i] += c * row[i];
  }

  static std::pair<CycloElement, CycloElement> aligned(const CycloElement& a, const CycloElement& b) {
    if (a.conductor_ == b.conductor_) return {a, b};
    long n = std::lcm(a.conductor_, b.conductor_);
    return {a.promote(n), b.promote(n)};
  }

  long conductor_;
  std::vector<Rational> coeffs_;
};

inline CycloElement cyclo_pow(CycloElement base, long e) {
  if (e < 0) return cyclo_pow(base.inverse(), -e);
  CycloElement acc = CycloElement::one(base.conductor());
  while (e > 0) {
    if (e & 1) acc = acc * base;
    base = base * base;
    e >>= 1;
  }
  return acc;
}

/// Galois automorphism zeta_n -> zeta_n^t of Q(zeta_n).
struct GaloisAuto {
  long conductor;
  long exponent;

  GaloisAuto(long n, long t) : conductor(n), exponent(mod_reduce(t, n)) {
    if (n > 1 && std::gcd(exponent, n) != 1) throw BadExponent("GaloisAuto: gcd(t,n) != 1");
  }
  CycloElement operator()(const CycloElement& x) const {
    if (x.conductor() != conductor)
      throw std::invalid_argument("GaloisAuto: conductor mismatch");
    return x.galois(exponent);
  }
  GaloisAuto compose(const GaloisAuto& o) const {
    if (conductor != o.conductor) throw std::invalid_argument("GaloisAuto: conductor mismatch");
    return GaloisAuto(conductor, mod_reduce(exponent * o.exponent, conductor));
  }
};

/// Galois orbit of x under the full (Z/n)^*, plus the degree of Q(x).
inline std::pair<std::vector<CycloElement>, long> orbit_and_degree(const CycloElement& x) {
  std::vector<CycloElement> orbit;
  for (long t : units_mod(x.conductor())) {
    CycloElement img = x.conductor() == 1 ? x : x.galois(t);
    if (std::find(orbit.begin(), orbit.end(), img) == orbit.end()) orbit.push_back(img);
  }
  return {orbit, static_cast<long>(orbit.size())};
}

/// Subgroup of (Z/n)^* fixing x.
inline std::vector<long> fixing_subgroup(const CycloElement& x) {
  std::vector<long> fix;
  for (long t : units_mod(x.conductor()))
    if (x.conductor() == 1 || x.galois(t) == x) fix.push_back(t);
  return fix;
}

/// Integer combination of roots of unity of a fixed conductor, kept unreduced.
/// Character values live here; arithmetic is sparse convolution on exponents.
struct RootSum {
  long conductor = 1;
  std::map<long, long long> terms;  // exponent -> coefficient, zeta_conductor^e

  static RootSum zero(long n) { return RootSum{n, {}}; }
  static RootSum constant(long n, long long c) {
    RootSum r{n, {}};
    if (c != 0) r.terms[0] = c;
    return r;
  }
  static RootSum root(long n, long e) {
    RootSum r{n, {}};
    r.terms[mod_reduce(e, n)] = 1;
    return r;
  }

  RootSum& add_root(long e, long long c) {
    if (c == 0) return *this;
    long key = mod_reduce(e, conductor);
    if ((terms[key] += c) == 0) terms.erase(key);
    return *this;
  }

  friend RootSum operator+(const RootSum& a, const RootSum& b) {
    check_conductor(a, b);
    RootSum r = a;
    for (const auto& [e, c] : b.terms) r.add_root(e, c);
    return r;
  }
  friend RootSum operator-(const RootSum& a, const RootSum& b) {
    check_conductor(a, b);
    RootSum r = a;
    for (const auto& [e, c] : b.terms) r.add_root(e, -c);
    return r;
  }
  friend RootSum operator*(const RootSum& a, const RootSum& b) {
    check_conductor(a, b);
    RootSum r = zero(a.conductor);
    for (const auto& [e1, c1] : a.terms)
      for (const auto& [e2, c2] : b.terms) r.add_root(e1 + e2, c1 * c2);
    return r;
  }
  friend RootSum operator*(long long s, const RootSum& a) {
    RootSum r = zero(a.conductor);
    for (const auto& [e, c] : a.terms) r.add_root(e, s * c);
    return r;
  }

  RootSum conj() const {
    RootSum r = zero(conductor);
    for (const auto& [e, c] : terms) r.add_root(conductor - e, c);
    return r;
  }

  RootSum galois(long t) const {
    if (conductor > 1 && std::gcd(mod_reduce(t, conductor), conductor) != 1)
      throw BadExponent("RootSum::galois");
    RootSum r = zero(conductor);
    for (const auto& [e, c] : terms) r.add_root(e * mod_reduce(t, conductor), c);
    return r;
  }

  RootSum promote(long target) const {
    if (target % conductor != 0) throw std::invalid_argument("RootSum::promote");
    long scale = target / conductor;
    RootSum r = zero(target);
    for (const auto& [e, c] : terms) r.add_root(e * scale, c);
    return r;
  }

  CycloElement to_cyclo() const {
    std::map<long, Rational> m;
    for (const auto& [e, c] : terms) m[e] = Rational(static_cast<long>(c));
    return CycloElement::from_exponents(conductor, m);
  }

  /// Canonical equality (reduced modulo Phi_n).
  bool equals(const RootSum& o) const { return (*this - o).to_cyclo().is_zero(); }

 private:
  static void check_conductor(const RootSum& a, const RootSum& b) {
    if (a.conductor != b.conductor) throw std::invalid_argument("RootSum: conductor mismatch");
  }
};

}  // namespace cmcurves
