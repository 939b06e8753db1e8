#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include <gmpxx.h>

namespace cmcurves {

using Rational = mpq_class;

inline long mod_reduce(long x, long n) {
  long r = x % n;
  return r < 0 ? r + n : r;
}

inline long mod_pow(long base, long exp, long n) {
  base = mod_reduce(base, n);
  long acc = 1 % n;
  while (exp > 0) {
    if (exp & 1) acc = (acc * base) % n;
    base = (base * base) % n;
    exp >>= 1;
  }
  return acc;
}

inline bool is_prime(long n) {
  if (n < 2) return false;
  for (long p = 2; p * p <= n; ++p)
    if (n % p == 0) return false;
  return true;
}

inline long euler_phi(long n) {
  long result = n, m = n;
  for (long p = 2; p * p <= m; ++p) {
    if (m % p == 0) {
      result -= result / p;
      while (m % p == 0) m /= p;
    }
  }
  if (m > 1) result -= result / m;
  return result;
}

/// Multiplicative order of x modulo n; requires gcd(x, n) = 1.
inline long multiplicative_order(long x, long n) {
  if (std::gcd(mod_reduce(x, n), n) != 1)
    throw std::invalid_argument("multiplicative_order: not a unit");
  long acc = mod_reduce(x, n), ord = 1;
  while (acc != 1 % n) {
    acc = (acc * mod_reduce(x, n)) % n;
    ++ord;
  }
  return ord;
}

/// Units of Z/n, ascending.
inline std::vector<long> units_mod(long n) {
  std::vector<long> u;
  for (long t = 0; t < n; ++t)
    if (std::gcd(t, n) == 1) u.push_back(t);
  if (n == 1) u = {0};
  return u;
}

}  // namespace cmcurves
