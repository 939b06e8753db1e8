#pragma once

// Orbit arithmetic mod q, Chevalley-Weil multiplicities, CM-type extraction,
// primitivity/simplicity certificates, and the signature classification
// search.

#include <algorithm>
#include <optional>
#include <set>
#include <vector>

#include "cmcurves/certified_sign.hpp"
#include "cmcurves/characters.hpp"

namespace cmcurves {

struct DegenerateGenerator : std::domain_error {
  DegenerateGenerator() : std::domain_error("DegenerateGenerator: mu = 0") {}
};

// ---------------------------------------------------------------------------
// Orbits O_l = {l, [kl], [k^2 l]} and their q / 2q classification.

struct Orbit {
  std::vector<long> elements;  // sorted ascending
  long representative = 0;
  long sum = 0;           // q or 2q exactly
  bool first_half = false;  // sum == q
};

struct OrbitPartition {
  long q = 0, k = 0, s = 0;
  std::vector<Orbit> orbits;  // first-half orbits first, each block by rep
  bool boundary_element_seen = false;  // some orbit contains (q-1)/2
};

inline OrbitPartition orbit_partition(long q, long k) {
  if (!is_prime(q) || (q - 1) % 3 != 0) throw BadTwist();
  if (k < 2 || k > (q - 1) / 2 || mod_pow(k, 3, q) != 1) throw BadTwist();
  OrbitPartition part;
  part.q = q;
  part.k = k;
  part.s = (q - 1) / 3;
  long first = 0;
  for (const auto& o : adjoint_orbits(q, k)) {
    Orbit orbit{o.elements, o.representative, o.sum, false};
    if (orbit.elements.size() != 3) throw std::logic_error("orbit size != 3");
    if (orbit.sum != q && orbit.sum != 2 * q) throw std::logic_error("orbit sum not in {q, 2q}");
    orbit.first_half = orbit.sum == q;
    if (orbit.first_half) ++first;
    for (long e : orbit.elements)
      if (2 * e == q - 1) part.boundary_element_seen = true;
    part.orbits.push_back(std::move(orbit));
  }
  if (2 * first != part.s) throw std::logic_error("first-half orbit count != s/2");
  return part;
}

/// alpha_l = zeta^l + zeta^(kl) + zeta^(k^2 l) in Q(zeta_q).
inline CycloElement alpha_element(long q, long k, long l) {
  std::map<long, Rational> terms;
  for (long e : {l, mod_reduce(k * l, q), mod_reduce(k * k * l, q)}) terms[mod_reduce(e, q)] += 1;
  return CycloElement::from_exponents(q, terms);
}

/// beta_l = sin(2 pi l / q) + sin(2 pi k l / q) + sin(2 pi k^2 l / q),
/// expressed exactly as (alpha_l - conj(alpha_l)) / (2i) in Q(zeta_4q).
inline CycloElement beta_element(long q, long k, long l) {
  CycloElement alpha = alpha_element(q, k, l);
  CycloElement mu = (alpha - alpha.conjugate()).promote(4 * q);
  CycloElement two_i = Rational(2) * CycloElement::root_of_unity(4 * q, q);
  return mu / two_i;
}

inline int beta_sign(long q, long k, long l) {
  if (l < 1 || l > q - 1) throw std::invalid_argument("beta_sign: l out of range");
  int sign = certified_sign(beta_element(q, k, l));
  if (sign == 0) throw std::logic_error("beta_l vanished");
  return sign;
}

/// Runs the three classification routes (orbit sum, count of elements below
/// (q-1)/2, beta sign) for every l and throws on any disagreement.
inline OrbitPartition verify_orbit_classification(long q, long k) {
  OrbitPartition part = orbit_partition(q, k);
  for (const auto& o : part.orbits) {
    long below = 0;
    for (long e : o.elements)
      if (2 * e < q - 1) ++below;
    bool by_count = below >= 2;  // the bound argument only needs two small elements
    bool by_beta = beta_sign(q, k, o.representative) > 0;
    if (by_count != o.first_half || by_beta != o.first_half)
      throw std::logic_error("orbit classification routes disagree at l=" +
                             std::to_string(o.representative));
  }
  return part;
}

// ---------------------------------------------------------------------------
// Chevalley-Weil.

/// Multiplicity of the eigenvalue exp(2 pi i alpha / n) of chi(g), g of order
/// n, via the exact discrete Fourier sum (1/n) sum_t chi(g^t) zeta_n^(-alpha t).
inline std::vector<long> eigenvalue_multiplicities(const Inventory& inv, const Character& chi,
                                                   const GroupElement& g) {
  const GroupSpec& s = inv.spec;
  long n = element_order(s, g);
  long L = std::lcm(s.exponent, n);
  std::vector<RootSum> acc(n, RootSum::zero(L));
  GroupElement gp = identity_element();
  for (long t = 0; t < n; ++t) {
    RootSum v = chi.at(inv.classes, gp).promote(L);
    for (long a = 0; a < n; ++a) acc[a] = acc[a] + v * RootSum::root(L, -a * t * (L / n));
    gp = mul(s, gp, g);
  }
  std::vector<long> mult(n);
  for (long a = 0; a < n; ++a) {
    Rational r = acc[a].to_cyclo().rational_value() / n;
    if (r.get_den() != 1 || r < 0) throw std::logic_error("eigenvalue multiplicity not in Z>=0");
    mult[a] = r.get_num().get_si();
  }
  return mult;
}

/// Chevalley-Weil multiplicity of chi in H^0(Y, omega_Y) for a genus-0 base:
/// N = -deg chi + sum_mu sum_alpha N_{mu,alpha} <-alpha/n_mu>.
inline long chevalley_weil_multiplicity(const Inventory& inv, const Character& chi,
                                        const std::vector<GroupElement>& monodromy) {
  validate_monodromy(inv.spec, monodromy);
  bool trivial = true;
  for (const auto& v : chi.values)
    if (!v.equals(RootSum::constant(inv.spec.exponent, 1))) trivial = false;
  Rational acc = Rational(trivial ? 1 : 0) - Rational(chi.degree(inv.classes));
  for (const auto& g : monodromy) {
    long n = element_order(inv.spec, g);
    auto mult = eigenvalue_multiplicities(inv, chi, g);
    for (long a = 1; a < n; ++a) acc += Rational(mult[a]) * Rational(n - a) / Rational(n);
  }
  if (acc.get_den() != 1 || acc < 0)
    throw std::logic_error("Chevalley-Weil multiplicity not a non-negative integer");
  return acc.get_num().get_si();
}

/// Branch data of the canonical covering of each family. The G_{q,3}
/// orientation (b, a^(-k^2) b^2, a) is the one whose H^0 eigenvalue exponents
/// are the sum-q orbits; G_m uses (a, b, (ab)^-1).
inline std::vector<GroupElement> canonical_monodromy(const GroupSpec& s) {
  if (s.family == Family::Gqn) {
    if (s.n != 3) throw std::invalid_argument("canonical_monodromy: n = 3 only");
    GroupElement g1{0, 1}, g2{mod_reduce(-s.k * s.k, s.q), 2}, g3{1, 0};
    std::vector<GroupElement> mono{g1, g2, g3};
    validate_monodromy(s, mono);
    return mono;
  }
  GroupElement a{1, 0}, b{0, 1};
  std::vector<GroupElement> mono{a, b, inverse(s, mul(s, a, b))};
  validate_monodromy(s, mono);
  return mono;
}

struct H0Decomposition {
  std::vector<std::pair<std::string, long>> multiplicities;  // per complex irreducible
  long genus = 0;  // sum N * deg, cross-checked by callers against g(Y)
};

inline H0Decomposition h0_decomposition(const Inventory& inv,
                                        const std::vector<GroupElement>& monodromy) {
  H0Decomposition dec;
  for (const auto& chi : inv.irreducibles) {
    long N = chevalley_weil_multiplicity(inv, chi, monodromy);
    dec.genus += N * chi.degree(inv.classes);
    dec.multiplicities.emplace_back(chi.label, N);
  }
  return dec;
}

// ---------------------------------------------------------------------------
// CM-types.

struct CMType {
  long conductor = 0;
  std::vector<long> fixing;                  // subgroup S of (Z/n)^* fixed by the field
  std::vector<std::vector<long>> embeddings;  // cosets tS, sorted; one per pair

  long field_degree() const {
    return static_cast<long>(units_mod(conductor).size() / fixing.size());
  }
};

namespace detail {

inline std::vector<long> coset_of(long t, const std::vector<long>& S, long n) {
  std::vector<long> c;
  for (long s : S) c.push_back(mod_reduce(t * s, n));
  std::sort(c.begin(), c.end());
  return c;
}

}  // namespace detail

/// CM-type axiom: the chosen cosets and their conjugates are disjoint and
/// together cover every embedding.
inline bool cm_type_axiom_holds(const CMType& phi) {
  std::set<std::vector<long>> chosen(phi.embeddings.begin(), phi.embeddings.end());
  if (chosen.size() != phi.embeddings.size()) return false;
  std::set<std::vector<long>> covered = chosen;
  for (const auto& c : phi.embeddings) {
    auto bar = detail::coset_of(mod_reduce(-c.front(), phi.conductor), phi.fixing, phi.conductor);
    if (chosen.count(bar)) return false;
    covered.insert(bar);
  }
  return 2 * chosen.size() == covered.size() &&
         covered.size() * phi.fixing.size() == units_mod(phi.conductor).size();
}

/// CM-type of JY read off from the H^0 decomposition: the a-eigenvalue
/// exponents of every irreducible occurring in H^0(Y, omega_Y).
inline CMType cm_type_jy(const Inventory& inv, const H0Decomposition& dec) {
  CMType phi;
  phi.conductor = inv.spec.family == Family::Gqn ? inv.spec.q : inv.spec.exponent;
  phi.fixing = {1};
  std::set<long> exps;
  for (size_t i = 0; i < inv.irreducibles.size(); ++i) {
    long N = dec.multiplicities[i].second;
    if (N == 0) continue;
    if (N > 1 || inv.irreducibles[i].exponents.empty())
      throw std::logic_error("H^0 not multiplicity-free over the eigenvalue characters");
    for (long e : inv.irreducibles[i].exponents)
      if (!exps.insert(e).second) throw std::logic_error("repeated CM-type exponent");
  }
  for (long e : exps) phi.embeddings.push_back({e});
  if (!cm_type_axiom_holds(phi)) throw std::logic_error("JY CM-type axiom violated");
  return phi;
}

/// CM-type of JX over the subfield fixed by the twist (<k> mod q, or <d> mod
/// 2^m): one coset per H^0 irreducible.
inline CMType cm_type_jx(const Inventory& inv, const H0Decomposition& dec) {
  CMType phi;
  const GroupSpec& s = inv.spec;
  if (s.family == Family::Gqn) {
    phi.conductor = s.q;
    phi.fixing = {1, s.k, mod_reduce(s.k * s.k, s.q)};
  } else {
    phi.conductor = s.exponent;
    phi.fixing = {1, s.d};
  }
  std::sort(phi.fixing.begin(), phi.fixing.end());
  std::set<std::vector<long>> cosets;
  for (size_t i = 0; i < inv.irreducibles.size(); ++i)
    if (dec.multiplicities[i].second > 0 && !inv.irreducibles[i].exponents.empty())
      cosets.insert(detail::coset_of(inv.irreducibles[i].exponents.front(), phi.fixing,
                                     phi.conductor));
  phi.embeddings.assign(cosets.begin(), cosets.end());
  if (!cm_type_axiom_holds(phi)) throw std::logic_error("JX CM-type axiom violated");
  return phi;
}

// ---------------------------------------------------------------------------
// Primitivity.

namespace detail {

/// The Galois group (Z/n)^* / S as canonical coset representatives.
struct QuotientGroup {
  long n;
  std::vector<long> S;
  std::vector<long> reps;  // least element of each coset

  explicit QuotientGroup(long n_, std::vector<long> S_) : n(n_), S(std::move(S_)) {
    std::set<long> seen;
    for (long t : units_mod(n)) {
      if (seen.count(t)) continue;
      auto c = coset_of(t, S, n);
      seen.insert(c.begin(), c.end());
      reps.push_back(c.front());
    }
    std::sort(reps.begin(), reps.end());
  }

  long canon(long t) const { return coset_of(mod_reduce(t, n), S, n).front(); }
  long mul(long a, long b) const { return canon(a * b); }
  long size() const { return static_cast<long>(reps.size()); }

  std::vector<std::vector<long>> all_subgroups() const {
    std::set<std::vector<long>> subs;
    subs.insert({canon(1)});
    // cyclic subgroups, then closure under pairwise join
    for (long g : reps) {
      std::vector<long> h{canon(1)};
      long x = canon(g);
      while (x != canon(1)) {
        h.push_back(x);
        x = mul(x, g);
      }
      std::sort(h.begin(), h.end());
      subs.insert(h);
    }
    bool grew = true;
    while (grew) {
      grew = false;
      std::vector<std::vector<long>> cur(subs.begin(), subs.end());
      for (const auto& h1 : cur)
        for (const auto& h2 : cur) {
          std::set<long> join(h1.begin(), h1.end());
          std::vector<long> frontier(h2.begin(), h2.end());
          while (!frontier.empty()) {
            std::vector<long> next;
            for (long x : frontier)
              for (long y : std::vector<long>(join.begin(), join.end())) {
                long z = mul(x, y);
                if (join.insert(z).second) next.push_back(z);
              }
            frontier = std::move(next);
          }
          std::vector<long> j(join.begin(), join.end());
          if (subs.insert(j).second) grew = true;
        }
    }
    return {subs.begin(), subs.end()};
  }
};

}  // namespace detail

struct PrimitivityCoset {
  bool primitive = false;
  std::vector<long> witness;  // subgroup stabilizing the type, when imprimitive
};

/// Coset criterion for abelian CM fields: the type is induced from the
/// subfield fixed by T (a CM subfield, so conj not in T) iff Phi * T = Phi.
inline PrimitivityCoset is_primitive_coset(const CMType& phi) {
  detail::QuotientGroup Q(phi.conductor, phi.fixing);
  std::set<long> type;
  for (const auto& c : phi.embeddings) type.insert(Q.canon(c.front()));
  long conj = Q.canon(phi.conductor - 1);
  for (const auto& T : Q.all_subgroups()) {
    if (T.size() == 1) continue;
    if (std::find(T.begin(), T.end(), conj) != T.end()) continue;
    bool stable = true;
    for (long t : type)
      for (long u : T)
        if (!type.count(Q.mul(t, u))) {
          stable = false;
          break;
        }
    if (stable) return {false, T};
  }
  return {true, {}};
}

/// Shimura-Taniyama criterion for the type normalized by mu = alpha -
/// conj(alpha): primitive iff (i) K_0(mu) = Q(mu) and (ii) no conjugate ratio
/// mu'/mu is totally positive.
inline bool is_primitive_shimura_taniyama(const CycloElement& alpha) {
  CycloElement mu = alpha - alpha.conjugate();
  if (mu.is_zero()) throw DegenerateGenerator();
  CycloElement trace = alpha + alpha.conjugate();
  // (i): every automorphism fixing mu fixes K_0 = Q(alpha + conj alpha)
  for (long t : fixing_subgroup(mu))
    if (trace.galois(t) != trace) return false;
  // (ii)
  std::vector<CycloElement> seen{mu};
  for (long t : units_mod(mu.conductor())) {
    CycloElement mu2 = mu.galois(t);
    if (std::find(seen.begin(), seen.end(), mu2) != seen.end()) continue;
    seen.push_back(mu2);
    CycloElement ratio = mu2 / mu;
    if (ratio != ratio.conjugate()) throw std::logic_error("conjugate ratio not real");
    if (is_totally_positive(ratio)) return false;
  }
  return true;
}

struct SubfieldInfo {
  long subgroup_order = 0;
  long field_degree = 0;
  bool real = false;  // fixed field contained in R (conj in the subgroup)
};

struct GmSimplicityReport {
  bool simple = false;
  bool galois_group_cyclic = false;
  std::vector<SubfieldInfo> lattice;  // one row per subgroup of Gal(K_V | Q)
};

/// K_V = Q(xi + xi^d) has no proper CM-subfield: every nontrivial subgroup of
/// its (cyclic) Galois group contains complex conjugation.
inline GmSimplicityReport gm_simplicity(long m) {
  if (m < 3) throw std::domain_error("gm_simplicity: m >= 3 required");
  long n = 1L << m;
  detail::QuotientGroup Q(n, {1, n / 2 - 1});  // Gal(K_V|Q) = (Z/2^m)^* / <d>
  GmSimplicityReport rep;
  long conj = Q.canon(n - 1);
  // cyclic, generated by the image of 5
  std::set<long> gen;
  long x = Q.canon(5);
  while (!gen.count(x)) {
    gen.insert(x);
    x = Q.mul(x, Q.canon(5));
  }
  rep.galois_group_cyclic = static_cast<long>(gen.size()) == Q.size();
  rep.simple = true;
  for (const auto& T : Q.all_subgroups()) {
    SubfieldInfo info;
    info.subgroup_order = static_cast<long>(T.size());
    info.field_degree = Q.size() / info.subgroup_order;
    info.real = std::find(T.begin(), T.end(), conj) != T.end();
    if (T.size() > 1 && !info.real) rep.simple = false;
    rep.lattice.push_back(info);
  }
  std::sort(rep.lattice.begin(), rep.lattice.end(),
            [](const SubfieldInfo& a, const SubfieldInfo& b) {
              return a.subgroup_order < b.subgroup_order;
            });
  return rep;
}

// ---------------------------------------------------------------------------
// Signature classification (the covering-data search behind Theorem 1).

struct CoveringSignature {
  long n = 0, r = 0, t = 0;
  std::vector<long> orders;  // the n_j, sorted ascending

  friend bool operator==(const CoveringSignature&, const CoveringSignature&) = default;
};

namespace detail {

inline void enumerate_multisets(const std::vector<long>& divisors, long r, size_t from,
                                std::vector<long>& cur, std::vector<std::vector<long>>& out) {
  if (static_cast<long>(cur.size()) == r) {
    out.push_back(cur);
    return;
  }
  for (size_t i = from; i < divisors.size(); ++i) {
    cur.push_back(divisors[i]);
    enumerate_multisets(divisors, r, i, cur, out);
    cur.pop_back();
  }
}

}  // namespace detail

/// Exhaustive enumeration of sum_j n/n_j = n(r+t-2) - 1 over odd n <= n_max,
/// r+t <= points_max, n_j | n with n_j > 1. q enters only through the count t
/// of order-q branch points, so solutions are q-independent families.
inline std::vector<CoveringSignature> signature_search(long n_max, long points_max) {
  std::vector<CoveringSignature> found;
  for (long n = 3; n <= n_max; n += 2) {
    std::vector<long> divisors;
    for (long d = 2; d <= n; ++d)
      if (n % d == 0) divisors.push_back(d);
    for (long r = 0; r <= points_max; ++r) {
      std::vector<std::vector<long>> multisets;
      std::vector<long> cur;
      detail::enumerate_multisets(divisors, r, 0, cur, multisets);
      for (const auto& orders : multisets)
        for (long t = 0; r + t <= points_max; ++t) {
          long lhs = 0;
          for (long nj : orders) lhs += n / nj;
          if (lhs == n * (r + t - 2) - 1) found.push_back({n, r, t, orders});
        }
    }
  }
  return found;
}

}  // namespace cmcurves
