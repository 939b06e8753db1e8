#pragma once

// Certified sign determination for real cyclotomic numbers: interval
// evaluation at escalating MPFR precision, exact zero pre-tested symbolically.

#include <mpfr.h>

#include <stdexcept>

#include "cmcurves/cyclotomic.hpp"

namespace cmcurves {

struct NotReal : std::domain_error {
  NotReal() : std::domain_error("NotReal: embedded image not fixed by conjugation") {}
};
struct PrecisionExhausted : std::runtime_error {
  PrecisionExhausted() : std::runtime_error("certified_sign: precision cap reached") {}
};

namespace detail {

class Interval {
 public:
  explicit Interval(mpfr_prec_t prec) {
    mpfr_init2(lo_, prec);
    mpfr_init2(hi_, prec);
    mpfr_set_zero(lo_, 1);
    mpfr_set_zero(hi_, 1);
  }
  ~Interval() {
    mpfr_clear(lo_);
    mpfr_clear(hi_);
  }
  Interval(const Interval&) = delete;
  Interval& operator=(const Interval&) = delete;

  mpfr_ptr lo() { return lo_; }
  mpfr_ptr hi() { return hi_; }

 private:
  mpfr_t lo_, hi_;
};

// Enclosure of sum_j c_j * cos(2*pi*j/n) into [out_lo, out_hi].
inline void enclose_real_embedding(const std::vector<Rational>& coeffs, long n,
                                   mpfr_prec_t prec, mpfr_ptr out_lo, mpfr_ptr out_hi) {
  mpfr_t pi_lo, pi_hi, th_lo, th_hi, c_lo, c_hi, w, q_lo, q_hi, p1, p2, p3, p4;
  for (auto* v : {&pi_lo, &pi_hi, &th_lo, &th_hi, &c_lo, &c_hi, &w, &q_lo, &q_hi, &p1, &p2, &p3, &p4})
    mpfr_init2(*v, prec);
  mpfr_const_pi(pi_lo, MPFR_RNDD);
  mpfr_const_pi(pi_hi, MPFR_RNDU);
  mpfr_set_zero(out_lo, 1);
  mpfr_set_zero(out_hi, 1);
  for (long j = 0; j < static_cast<long>(coeffs.size()); ++j) {
    if (coeffs[j] == 0) continue;
    // theta = 2*pi*j/n, enclosed
    mpfr_mul_si(th_lo, pi_lo, 2 * j, MPFR_RNDD);
    mpfr_div_si(th_lo, th_lo, n, MPFR_RNDD);
    mpfr_mul_si(th_hi, pi_hi, 2 * j, MPFR_RNDU);
    mpfr_div_si(th_hi, th_hi, n, MPFR_RNDU);
    // cos over [th_lo, th_hi]: cos(th_lo) enclosure widened by the interval
    // width (cos is 1-Lipschitz)
    mpfr_sub(w, th_hi, th_lo, MPFR_RNDU);
    mpfr_cos(c_lo, th_lo, MPFR_RNDD);
    mpfr_cos(c_hi, th_lo, MPFR_RNDU);
    mpfr_sub(c_lo, c_lo, w, MPFR_RNDD);
    mpfr_add(c_hi, c_hi, w, MPFR_RNDU);
    // multiply by the rational coefficient
    mpfr_set_q(q_lo, coeffs[j].get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(q_hi, coeffs[j].get_mpq_t(), MPFR_RNDU);
    mpfr_mul(p1, q_lo, c_lo, MPFR_RNDD);
    mpfr_mul(p2, q_lo, c_hi, MPFR_RNDD);
    mpfr_mul(p3, q_hi, c_lo, MPFR_RNDD);
    mpfr_mul(p4, q_hi, c_hi, MPFR_RNDD);
    mpfr_min(p1, p1, p2, MPFR_RNDD);
    mpfr_min(p1, p1, p3, MPFR_RNDD);
    mpfr_min(p1, p1, p4, MPFR_RNDD);
    mpfr_add(out_lo, out_lo, p1, MPFR_RNDD);
    mpfr_mul(p1, q_lo, c_lo, MPFR_RNDU);
    mpfr_mul(p2, q_lo, c_hi, MPFR_RNDU);
    mpfr_mul(p3, q_hi, c_lo, MPFR_RNDU);
    mpfr_mul(p4, q_hi, c_hi, MPFR_RNDU);
    mpfr_max(p1, p1, p2, MPFR_RNDU);
    mpfr_max(p1, p1, p3, MPFR_RNDU);
    mpfr_max(p1, p1, p4, MPFR_RNDU);
    mpfr_add(out_hi, out_hi, p1, MPFR_RNDU);
  }
  for (auto* v : {&pi_lo, &pi_hi, &th_lo, &th_hi, &c_lo, &c_hi, &w, &q_lo, &q_hi, &p1, &p2, &p3, &p4})
    mpfr_clear(*v);
}

}  // namespace detail

/// Sign of the real number obtained by sending zeta_n to exp(2*pi*i*t/n).
/// The image must be conjugation-fixed; exact zero is detected symbolically.
inline int certified_sign(const CycloElement& x, long embedding = 1,
                          mpfr_prec_t start_prec = 64) {
  CycloElement y = (x.conductor() == 1 || mod_reduce(embedding, x.conductor()) == 1)
                       ? x
                       : x.galois(embedding);
  if (y != y.conjugate()) throw NotReal();
  if (y.is_zero()) return 0;
  if (y.is_rational()) return sgn(y.rational_value());
  for (mpfr_prec_t prec = start_prec; prec <= (1 << 20); prec *= 2) {
    detail::Interval iv(prec);
    detail::enclose_real_embedding(y.coeffs(), y.conductor(), prec, iv.lo(), iv.hi());
    if (mpfr_sgn(iv.lo()) > 0) return 1;
    if (mpfr_sgn(iv.hi()) < 0) return -1;
  }
  throw PrecisionExhausted();
}

struct EmbeddingSign {
  long embedding;
  int sign;
};

/// Signs of x at every embedding of Q(zeta_n) restricted to Q(x) (one entry
/// per unit class; conjugate embeddings repeat values for real x).
inline std::vector<EmbeddingSign> all_embedding_signs(const CycloElement& x) {
  std::vector<EmbeddingSign> out;
  for (long t : units_mod(x.conductor()))
    out.push_back({t, certified_sign(x, t)});
  return out;
}

/// True iff x is fixed by conjugation and positive at every real embedding.
inline bool is_totally_positive(const CycloElement& x) {
  if (x != x.conjugate()) throw NotReal();
  if (x.is_zero()) return false;
  for (long t : units_mod(x.conductor()))
    if (certified_sign(x, t) <= 0) return false;
  return true;
}

}  // namespace cmcurves
