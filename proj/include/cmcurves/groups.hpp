#pragma once

// The two metacyclic families: G_{q,n} = <a,b | a^q = b^n = 1, b^-1 a b = a^k>
// and G_m = <a,b | a^(2^m) = b^2 = 1, b a b = a^d>, d = 2^(m-1)-1.
// Elements in normal form a^i b^j; all subgroup and coset computation is
// direct enumeration.

#include <algorithm>
#include <compare>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "cmcurves/numeric_util.hpp"

namespace cmcurves {

struct NotPrime : std::domain_error {
  NotPrime() : std::domain_error("NotPrime") {}
};
struct NoSuchExponent : std::domain_error {
  NoSuchExponent() : std::domain_error("NoSuchExponent") {}
};
struct InvalidMonodromy : std::domain_error {
  explicit InvalidMonodromy(const std::string& w) : std::domain_error("InvalidMonodromy: " + w) {}
};
struct BadTwist : std::domain_error {
  BadTwist() : std::domain_error("BadTwist: k not the canonical cube root") {}
};

enum class Family { Gqn, Gm };

/// Twist exponent for G_{q,n}: the unique k with ord_q(k) = n, canonical for
/// n = 3 meaning 2 <= k <= (q-1)/2; `conjugate_root` selects q-1-k instead.
inline long find_twist_exponent(long q, long n, bool conjugate_root = false) {
  if (!is_prime(q) || q == 2) throw NotPrime();
  if (n < 2 || (q - 1) % n != 0) throw NoSuchExponent();
  std::vector<long> candidates;
  for (long k = 2; k < q; ++k)
    if (multiplicative_order(k, q) == n) candidates.push_back(k);
  if (candidates.empty()) throw NoSuchExponent();
  if (n == 3) {
    for (long k : candidates)
      if (2 <= k && k <= (q - 1) / 2) return conjugate_root ? q - 1 - k : k;
    throw NoSuchExponent();
  }
  return candidates.front();
}

struct GroupSpec {
  Family family;
  long q = 0, n = 0, k = 0;  // Gqn parameters
  long m = 0, d = 0;         // Gm parameters
  long a_order = 0, b_order = 0, twist = 0, order = 0, exponent = 0;

  static GroupSpec gqn(long q, long n, std::optional<long> k_choice = std::nullopt) {
    GroupSpec s;
    s.family = Family::Gqn;
    s.q = q;
    s.n = n;
    s.k = k_choice ? *k_choice : find_twist_exponent(q, n);
    if (!is_prime(q)) throw NotPrime();
    if (multiplicative_order(s.k, q) != n) throw NoSuchExponent();
    s.a_order = q;
    s.b_order = n;
    s.twist = s.k;
    s.order = q * n;
    s.exponent = q * n;
    return s;
  }

  static GroupSpec gm(long m) {
    if (m < 3) throw std::domain_error("BadParameter: Gm requires m >= 3");
    GroupSpec s;
    s.family = Family::Gm;
    s.m = m;
    s.a_order = 1L << m;
    s.d = s.a_order / 2 - 1;
    if (mod_reduce(s.d * s.d, s.a_order) != 1)
      throw std::logic_error("Gm twist: d^2 != 1 mod 2^m");
    s.b_order = 2;
    s.twist = s.d;
    s.order = s.a_order * 2;
    s.exponent = s.a_order;
    return s;
  }

  bool operator==(const GroupSpec& o) const {
    return family == o.family && q == o.q && n == o.n && k == o.k && m == o.m;
  }
};

/// a^i b^j in normal form. Ordered lexicographically by (j, i).
struct GroupElement {
  long i = 0, j = 0;
  friend auto operator<=>(const GroupElement& x, const GroupElement& y) {
    if (auto c = x.j <=> y.j; c != 0) return c;
    return x.i <=> y.i;
  }
  friend bool operator==(const GroupElement&, const GroupElement&) = default;
};

inline GroupElement identity_element() { return {0, 0}; }

inline GroupElement mul(const GroupSpec& s, const GroupElement& g, const GroupElement& h) {
  // (a^i b^j)(a^u b^v) = a^(i + u * twist^j) b^(j+v), since b a = a^twist b.
  long shift = mod_pow(s.twist, g.j, s.a_order);
  return {mod_reduce(g.i + h.i * shift, s.a_order), mod_reduce(g.j + h.j, s.b_order)};
}

inline GroupElement inverse(const GroupSpec& s, const GroupElement& g) {
  long jinv = mod_reduce(-g.j, s.b_order);
  long shift = mod_pow(s.twist, jinv, s.a_order);
  return {mod_reduce(-g.i * shift, s.a_order), jinv};
}

inline GroupElement power(const GroupSpec& s, GroupElement g, long e) {
  if (e < 0) return power(s, inverse(s, g), -e);
  GroupElement acc = identity_element();
  while (e > 0) {
    if (e & 1) acc = mul(s, acc, g);
    g = mul(s, g, g);
    e >>= 1;
  }
  return acc;
}

inline long element_order(const GroupSpec& s, const GroupElement& g) {
  GroupElement acc = g;
  long ord = 1;
  while (!(acc == identity_element())) {
    acc = mul(s, acc, g);
    ++ord;
  }
  return ord;
}

inline std::vector<GroupElement> all_elements(const GroupSpec& s) {
  std::vector<GroupElement> out;
  out.reserve(s.order);
  for (long j = 0; j < s.b_order; ++j)
    for (long i = 0; i < s.a_order; ++i) out.push_back({i, j});
  return out;
}

struct Subgroup {
  GroupSpec spec;
  std::vector<GroupElement> generators;
  std::vector<GroupElement> elements;  // sorted by (j, i)

  long size() const { return static_cast<long>(elements.size()); }
  bool contains(const GroupElement& g) const {
    return std::binary_search(elements.begin(), elements.end(), g);
  }
};

/// Smallest subgroup containing the generators (orbit closure).
inline Subgroup subgroup_generated(const GroupSpec& s, std::vector<GroupElement> gens) {
  std::set<GroupElement> elems{identity_element()};
  std::vector<GroupElement> frontier{identity_element()};
  while (!frontier.empty()) {
    std::vector<GroupElement> next;
    for (const auto& e : frontier)
      for (const auto& g : gens) {
        for (const auto& prod : {mul(s, e, g), mul(s, e, inverse(s, g))})
          if (elems.insert(prod).second) next.push_back(prod);
      }
    frontier = std::move(next);
  }
  Subgroup h{s, std::move(gens), {elems.begin(), elems.end()}};
  return h;
}

inline Subgroup trivial_subgroup(const GroupSpec& s) { return subgroup_generated(s, {}); }
inline Subgroup full_group(const GroupSpec& s) {
  return subgroup_generated(s, {GroupElement{1, 0}, GroupElement{0, 1}});
}

/// Partition of G into A\G/B double cosets, each sorted, ordered by least element.
inline std::vector<std::vector<GroupElement>> double_cosets(const GroupSpec& s,
                                                            const Subgroup& A,
                                                            const Subgroup& B) {
  std::set<GroupElement> seen;
  std::vector<std::vector<GroupElement>> classes;
  for (const auto& g : all_elements(s)) {
    if (seen.count(g)) continue;
    std::set<GroupElement> cls;
    for (const auto& x : A.elements)
      for (const auto& y : B.elements) cls.insert(mul(s, mul(s, x, g), y));
    seen.insert(cls.begin(), cls.end());
    classes.emplace_back(cls.begin(), cls.end());
  }
  return classes;
}

struct ConjugacyClass {
  GroupElement representative;
  std::vector<GroupElement> elements;
  long size() const { return static_cast<long>(elements.size()); }
};

inline std::vector<ConjugacyClass> conjugacy_classes(const GroupSpec& s) {
  std::set<GroupElement> seen;
  std::vector<ConjugacyClass> classes;
  for (const auto& g : all_elements(s)) {
    if (seen.count(g)) continue;
    std::set<GroupElement> cls;
    for (const auto& x : all_elements(s)) cls.insert(mul(s, mul(s, x, g), inverse(s, x)));
    seen.insert(cls.begin(), cls.end());
    classes.push_back({*cls.begin(), {cls.begin(), cls.end()}});
  }
  return classes;
}

inline void validate_monodromy(const GroupSpec& s, const std::vector<GroupElement>& monodromy) {
  GroupElement prod = identity_element();
  for (const auto& g : monodromy) {
    if (g == identity_element()) throw InvalidMonodromy("identity branch element");
    prod = mul(s, prod, g);
  }
  if (!(prod == identity_element())) throw InvalidMonodromy("product of monodromy is not 1");
}

/// Genus of Y/H for a G-covering of a genus-g0 base with the given monodromy:
/// g = [G:H](g0 - 1) + 1 + (1/2) sum_j ([G:H] - |H\G/<g_j>|).
inline long quotient_genus(const GroupSpec& s, long g0,
                           const std::vector<GroupElement>& monodromy, const Subgroup& H) {
  validate_monodromy(s, monodromy);
  long index = s.order / H.size();
  long twice = 2 * (index * (g0 - 1) + 1);
  for (const auto& g : monodromy) {
    auto cosets = double_cosets(s, H, subgroup_generated(s, {g}));
    twice += index - static_cast<long>(cosets.size());
  }
  if (twice % 2 != 0) throw std::logic_error("quotient_genus: non-integral result");
  long genus = twice / 2;
  if (genus < 0) throw std::logic_error("quotient_genus: negative result");
  return genus;
}

}  // namespace cmcurves
