#pragma once

// Dense univariate polynomials and rational functions over cyclotomic
// coefficients, plus binary forms (for the transvectant calculus).

#include <vector>

#include "cmcurves/cyclotomic.hpp"

namespace cmcurves {

class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<CycloElement> coeffs) : c_(std::move(coeffs)) { trim(); }

  static Poly zero() { return Poly(); }
  static Poly constant(const CycloElement& v) { return Poly({v}); }
  static Poly variable() { return Poly({CycloElement::zero(), CycloElement::one()}); }
  /// c * X^e
  static Poly monomial(const CycloElement& c, long e) {
    std::vector<CycloElement> v(e + 1, CycloElement::zero());
    v[e] = c;
    return Poly(std::move(v));
  }

  long degree() const { return static_cast<long>(c_.size()) - 1; }  // -1 for zero
  bool is_zero() const { return c_.empty(); }
  const CycloElement& coeff(long i) const {
    static const CycloElement z = CycloElement::zero();
    return i >= 0 && i <= degree() ? c_[i] : z;
  }
  const CycloElement& leading() const {
    if (is_zero()) throw std::domain_error("Poly::leading: zero polynomial");
    return c_.back();
  }
  const std::vector<CycloElement>& coeffs() const { return c_; }

  friend Poly operator+(const Poly& a, const Poly& b) {
    std::vector<CycloElement> v(std::max(a.c_.size(), b.c_.size()), CycloElement::zero());
    for (size_t i = 0; i < a.c_.size(); ++i) v[i] = v[i] + a.c_[i];
    for (size_t i = 0; i < b.c_.size(); ++i) v[i] = v[i] + b.c_[i];
    return Poly(std::move(v));
  }
  friend Poly operator-(const Poly& a, const Poly& b) {
    std::vector<CycloElement> v(std::max(a.c_.size(), b.c_.size()), CycloElement::zero());
    for (size_t i = 0; i < a.c_.size(); ++i) v[i] = v[i] + a.c_[i];
    for (size_t i = 0; i < b.c_.size(); ++i) v[i] = v[i] - b.c_[i];
    return Poly(std::move(v));
  }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return zero();
    // raw convolution over a common conductor; avoids per-pair element churn
    long n = 1;
    for (const auto& c : a.c_) n = std::lcm(n, c.conductor());
    for (const auto& c : b.c_) n = std::lcm(n, c.conductor());
    std::vector<CycloElement> ap, bp;
    ap.reserve(a.c_.size());
    bp.reserve(b.c_.size());
    for (const auto& c : a.c_) ap.push_back(c.promote(n));
    for (const auto& c : b.c_) bp.push_back(c.promote(n));
    const auto& cd = detail::conductor_data(n);
    const long phi = cd.phi;
    std::vector<std::vector<Rational>> acc(ap.size() + bp.size() - 1,
                                           std::vector<Rational>(phi, Rational(0)));
    std::vector<Rational> tmp(phi > 1 ? 2 * phi - 1 : 1);
    for (size_t i = 0; i < ap.size(); ++i) {
      if (ap[i].is_zero()) continue;
      const auto& ac = ap[i].coeffs();
      for (size_t j = 0; j < bp.size(); ++j) {
        if (bp[j].is_zero()) continue;
        const auto& bc = bp[j].coeffs();
        for (auto& t : tmp) t = 0;
        for (long u = 0; u < phi; ++u) {
          if (ac[u] == 0) continue;
          for (long v = 0; v < phi; ++v)
            if (bc[v] != 0) tmp[u + v] += ac[u] * bc[v];
        }
        auto& out = acc[i + j];
        for (long e = 0; e < static_cast<long>(tmp.size()); ++e) {
          if (tmp[e] == 0) continue;
          if (e < phi) {
            out[e] += tmp[e];
          } else {
            const auto& row = cd.power_reduction[e - phi];
            for (long u = 0; u < phi; ++u)
              if (row[u] != 0) out[u] += tmp[e] * row[u];
          }
        }
      }
    }
    std::vector<CycloElement> v;
    v.reserve(acc.size());
    for (auto& row : acc) v.emplace_back(n, std::move(row));
    return Poly(std::move(v));
  }
  friend Poly operator*(const CycloElement& s, const Poly& a) {
    std::vector<CycloElement> v = a.c_;
    for (auto& x : v) x = s * x;
    return Poly(std::move(v));
  }
  Poly operator-() const { return Rational(-1) * CycloElement::one() * *this; }

  friend bool operator==(const Poly& a, const Poly& b) { return (a - b).is_zero(); }

  /// a = q*b + r with deg r < deg b.
  static void divmod(const Poly& a, const Poly& b, Poly& q, Poly& r) {
    if (b.is_zero()) throw DivisionByZero();
    std::vector<CycloElement> rem = a.c_;
    std::vector<CycloElement> quo(
        a.degree() >= b.degree() ? a.degree() - b.degree() + 1 : 0, CycloElement::zero());
    CycloElement lead_inv = b.leading().inverse();
    long rd = a.degree();
    while (rd >= b.degree()) {
      while (rd >= 0 && rem[rd].is_zero()) --rd;
      if (rd < b.degree()) break;
      CycloElement f = rem[rd] * lead_inv;
      long shift = rd - b.degree();
      quo[shift] = f;
      for (long i = 0; i <= b.degree(); ++i) rem[shift + i] = rem[shift + i] - f * b.c_[i];
    }
    q = Poly(std::move(quo));
    r = Poly(std::move(rem));
  }

  friend Poly operator%(const Poly& a, const Poly& b) {
    Poly q, r;
    divmod(a, b, q, r);
    return r;
  }
  friend Poly operator/(const Poly& a, const Poly& b) {
    Poly q, r;
    divmod(a, b, q, r);
    if (!r.is_zero()) throw std::domain_error("Poly: inexact division");
    return q;
  }

  Poly monic() const {
    if (is_zero()) return *this;
    return leading().inverse() * *this;
  }

  static Poly gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
      Poly r = a % b;
      a = std::move(b);
      b = std::move(r);
    }
    return a.monic();
  }

  Poly derivative() const {
    if (c_.size() <= 1) return zero();
    std::vector<CycloElement> v(c_.size() - 1, CycloElement::zero());
    for (size_t i = 1; i < c_.size(); ++i) v[i - 1] = Rational(static_cast<long>(i)) * c_[i];
    return Poly(std::move(v));
  }

  bool is_squarefree() const { return gcd(*this, derivative()).degree() == 0; }

  CycloElement eval(const CycloElement& x) const {
    CycloElement acc = CycloElement::zero();
    for (size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
    return acc;
  }

  /// (x + s)^N by the binomial theorem.
  static Poly binomial_linear(const CycloElement& s, long N) {
    std::vector<CycloElement> v(N + 1, CycloElement::zero());
    v[N] = CycloElement::one();
    if (s.is_zero()) return Poly(std::move(v));
    mpz_class binom(1);
    CycloElement spow = CycloElement::one(s.conductor());
    for (long i = N - 1; i >= 0; --i) {
      binom = binom * (i + 1) / (N - i);  // C(N, i), exact
      spow = spow * s;
      v[i] = Rational(binom) * spow;
    }
    return Poly(std::move(v));
  }

  Poly pow(long e) const {
    if (e < 0) throw std::invalid_argument("Poly::pow: negative exponent");
    if (e == 0) return constant(CycloElement::one());
    if (is_zero()) return zero();
    long d = degree();
    if (d == 0) return constant(cyclo_pow(c_[0], e));
    // Powers of c (x + s)^d expand by the binomial theorem; this covers every
    // repeated-linear-factor denominator in the automorphism checks, where
    // binary powering of dense big-coefficient polynomials is unaffordable.
    {
      CycloElement s = (Rational(1) / Rational(d)) * (c_[d - 1] / c_[d]);
      if (*this == c_[d] * binomial_linear(s, d))
        return cyclo_pow(c_[d], e) * binomial_linear(s, d * e);
    }
    Poly acc = constant(CycloElement::one());
    Poly base = *this;
    long r = e;
    while (r > 1) {
      if (r & 1) acc = acc * base;
      base = base * base;
      r >>= 1;
    }
    return acc * base;
  }

  Poly compose(const Poly& inner) const {
    Poly acc = zero();
    for (size_t i = c_.size(); i-- > 0;) acc = acc * inner + constant(c_[i]);
    return acc;
  }

  std::string to_string(const std::string& var) const {
    if (is_zero()) return "0";
    std::string out;
    for (long i = degree(); i >= 0; --i) {
      if (c_[i].is_zero()) continue;
      if (!out.empty()) out += " + ";
      out += "(" + c_[i].to_string() + ")";
      if (i >= 1) out += "*" + var;
      if (i >= 2) out += "^" + std::to_string(i);
    }
    return out;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }
  std::vector<CycloElement> c_;
};

/// num/den, reduced and with monic denominator.
class RatFunc {
 public:
  RatFunc() : num_(Poly::zero()), den_(Poly::constant(CycloElement::one())) {}
  RatFunc(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }
  explicit RatFunc(Poly num) : num_(std::move(num)), den_(Poly::constant(CycloElement::one())) {}

  static RatFunc variable() { return RatFunc(Poly::variable()); }
  static RatFunc constant(const CycloElement& c) { return RatFunc(Poly::constant(c)); }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b) {
    return RatFunc(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
    if (b.is_zero()) throw DivisionByZero();
    return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
  }
  RatFunc operator-() const { return RatFunc(-num_, den_); }

  friend bool operator==(const RatFunc& a, const RatFunc& b) {
    return (a.num_ * b.den_ - b.num_ * a.den_).is_zero();
  }

  RatFunc pow(long e) const {
    if (e < 0) return RatFunc(den_, num_).pow(-e);
    return RatFunc(num_.pow(e), den_.pow(e));
  }

  /// p(N/D) as a rational function, p a polynomial.
  static RatFunc substitute(const Poly& p, const RatFunc& r) {
    RatFunc acc;
    for (long i = p.degree(); i >= 0; --i)
      acc = acc * r + RatFunc(Poly::constant(p.coeff(i)));
    return acc;
  }

  RatFunc compose(const RatFunc& inner) const {
    return substitute(num_, inner) / substitute(den_, inner);
  }

  CycloElement eval(const CycloElement& x) const {
    CycloElement d = den_.eval(x);
    if (d.is_zero()) throw DivisionByZero();
    return num_.eval(x) / d;
  }

  std::string to_string(const std::string& var) const {
    std::string out = "(" + num_.to_string(var) + ")";
    if (den_.degree() != 0 || den_.coeff(0) != CycloElement::one())
      out += " / (" + den_.to_string(var) + ")";
    return out;
  }

 private:
  void normalize() {
    if (den_.is_zero()) throw DivisionByZero();
    if (num_.is_zero()) {
      den_ = Poly::constant(CycloElement::one());
      return;
    }
    // Reduction is cosmetic (equality cross-multiplies, eval points avoid
    // poles); the Euclidean gcd is unaffordable at large degree, so only
    // small operands are put in lowest terms.
    if (num_.degree() <= 32 && den_.degree() <= 32) {
      Poly g = Poly::gcd(num_, den_);
      if (g.degree() > 0) {
        num_ = num_ / g;
        den_ = den_ / g;
      }
    }
    CycloElement lead_inv = den_.leading().inverse();
    num_ = lead_inv * num_;
    den_ = lead_inv * den_;
  }

  Poly num_, den_;
};

/// Homogeneous binary form of fixed total degree: coeff(i) multiplies
/// x^i z^(degree - i).
class BiForm {
 public:
  BiForm(long degree, std::vector<CycloElement> coeffs)
      : deg_(degree), c_(std::move(coeffs)) {
    if (static_cast<long>(c_.size()) != deg_ + 1)
      throw std::invalid_argument("BiForm: coefficient count != degree + 1");
  }

  /// Homogenization of a univariate polynomial to the given total degree
  /// (degree 5 into 6 places the sixth root at infinity).
  static BiForm from_poly(const Poly& p, long degree) {
    if (p.degree() > degree) throw std::invalid_argument("BiForm: degree too small");
    std::vector<CycloElement> v(degree + 1, CycloElement::zero());
    for (long i = 0; i <= p.degree(); ++i) v[i] = p.coeff(i);
    return BiForm(degree, std::move(v));
  }

  long degree() const { return deg_; }
  const CycloElement& coeff(long i) const { return c_[i]; }
  bool is_constant_form() const { return deg_ == 0; }
  CycloElement constant_value() const {
    if (deg_ != 0) throw std::domain_error("BiForm: not degree 0");
    return c_[0];
  }

  BiForm dx() const {
    if (deg_ == 0) return BiForm(0, {CycloElement::zero()});
    std::vector<CycloElement> v(deg_, CycloElement::zero());
    for (long i = 1; i <= deg_; ++i) v[i - 1] = Rational(i) * c_[i];
    return BiForm(deg_ - 1, std::move(v));
  }
  BiForm dz() const {
    if (deg_ == 0) return BiForm(0, {CycloElement::zero()});
    std::vector<CycloElement> v(deg_, CycloElement::zero());
    for (long i = 0; i < deg_; ++i) v[i] = Rational(deg_ - i) * c_[i];
    return BiForm(deg_ - 1, std::move(v));
  }

  friend BiForm operator*(const BiForm& a, const BiForm& b) {
    std::vector<CycloElement> v(a.deg_ + b.deg_ + 1, CycloElement::zero());
    for (long i = 0; i <= a.deg_; ++i) {
      if (a.c_[i].is_zero()) continue;
      for (long j = 0; j <= b.deg_; ++j)
        if (!b.c_[j].is_zero()) v[i + j] = v[i + j] + a.c_[i] * b.c_[j];
    }
    return BiForm(a.deg_ + b.deg_, std::move(v));
  }
  friend BiForm operator+(const BiForm& a, const BiForm& b) {
    if (a.deg_ != b.deg_) throw std::invalid_argument("BiForm: degree mismatch");
    std::vector<CycloElement> v = a.c_;
    for (long i = 0; i <= a.deg_; ++i) v[i] = v[i] + b.c_[i];
    return BiForm(a.deg_, std::move(v));
  }
  friend BiForm operator-(const BiForm& a, const BiForm& b) {
    if (a.deg_ != b.deg_) throw std::invalid_argument("BiForm: degree mismatch");
    std::vector<CycloElement> v = a.c_;
    for (long i = 0; i <= a.deg_; ++i) v[i] = v[i] - b.c_[i];
    return BiForm(a.deg_, std::move(v));
  }
  friend BiForm operator*(const Rational& s, const BiForm& a) {
    std::vector<CycloElement> v = a.c_;
    for (auto& x : v) x = s * x;
    return BiForm(a.deg_, std::move(v));
  }

 private:
  long deg_;
  std::vector<CycloElement> c_;
};

/// k-th transvectant of forms of degrees p and q:
/// ((p-k)!(q-k)!)/(p!q!) sum_j (-1)^j C(k,j) f_{x^(k-j) z^j} g_{x^j z^(k-j)}.
inline BiForm transvectant(const BiForm& f, const BiForm& g, long k) {
  long p = f.degree(), q = g.degree();
  if (k > p || k > q) throw std::invalid_argument("transvectant: order exceeds degree");
  Rational pref(1);
  for (long v = p - k + 1; v <= p; ++v) pref /= v;  // (p-k)!/p!
  for (long v = q - k + 1; v <= q; ++v) pref /= v;
  BiForm acc(p + q - 2 * k, std::vector<CycloElement>(p + q - 2 * k + 1, CycloElement::zero()));
  Rational binom(1);
  for (long j = 0; j <= k; ++j) {
    BiForm df = f, dg = g;
    for (long t = 0; t < k - j; ++t) df = df.dx();
    for (long t = 0; t < j; ++t) df = df.dz();
    for (long t = 0; t < j; ++t) dg = dg.dx();
    for (long t = 0; t < k - j; ++t) dg = dg.dz();
    Rational sign = j % 2 == 0 ? 1 : -1;
    acc = acc + (sign * binom) * (df * dg);
    binom = binom * Rational(k - j) / Rational(j + 1);
  }
  return pref * acc;
}

}  // namespace cmcurves
