#pragma once

// Exact character theory for the two families: irreducible inventories,
// induction, inner products, fixed-subspace dimensions, the H^1 character of
// a covering, and Jacobian isotypic dimensions.
//
// Character values are stored on conjugacy-class representatives as integer
// combinations of roots of unity of conductor exp(G); the defining matrices
// enter only through their trace formulas.

#include <map>
#include <string>
#include <vector>

#include "cmcurves/cyclotomic.hpp"
#include "cmcurves/groups.hpp"

namespace cmcurves {

struct SpecMismatch : std::invalid_argument {
  SpecMismatch() : std::invalid_argument("SpecMismatch") {}
};

struct ClassData {
  GroupSpec spec;
  std::vector<ConjugacyClass> classes;
  std::map<GroupElement, size_t> class_of;
  size_t identity_class = 0;

  static ClassData build(const GroupSpec& spec) {
    ClassData cd;
    cd.spec = spec;
    cd.classes = conjugacy_classes(spec);
    for (size_t c = 0; c < cd.classes.size(); ++c) {
      for (const auto& g : cd.classes[c].elements) cd.class_of.emplace(g, c);
      if (cd.classes[c].representative == identity_element()) cd.identity_class = c;
    }
    return cd;
  }
};

struct Character {
  GroupSpec spec;
  std::string label;
  std::vector<RootSum> values;   // per conjugacy class
  std::vector<long> exponents;   // a-eigenvalue exponents (empty for degree 1)

  long degree(const ClassData& cd) const {
    CycloElement v = values[cd.identity_class].to_cyclo();
    Rational r = v.rational_value();
    if (r.get_den() != 1) throw std::logic_error("character degree not integral");
    return r.get_num().get_si();
  }

  const RootSum& at(const ClassData& cd, const GroupElement& g) const {
    return values[cd.class_of.at(g)];
  }
};

inline Character operator+(const Character& x, const Character& y) {
  if (!(x.spec == y.spec)) throw SpecMismatch();
  Character r = x;
  r.label = x.label + "+" + y.label;
  for (size_t c = 0; c < r.values.size(); ++c) r.values[c] = r.values[c] + y.values[c];
  return r;
}

inline bool same_character(const Character& x, const Character& y) {
  if (!(x.spec == y.spec) || x.values.size() != y.values.size()) return false;
  for (size_t c = 0; c < x.values.size(); ++c)
    if (!x.values[c].equals(y.values[c])) return false;
  return true;
}

/// Orbits of multiplication by k on {1,...,q-1}, each sorted ascending;
/// orbit order: sum-q orbits first, then sum-2q, each block by least element.
/// This matches the enumeration convention behind the CM-type listing.
struct AdjointOrbit {
  std::vector<long> elements;  // {l, [kl], [k^2 l], ...} sorted
  long representative = 0;
  long sum = 0;
};

inline std::vector<AdjointOrbit> adjoint_orbits(long q, long k) {
  std::vector<bool> seen(q, false);
  std::vector<AdjointOrbit> orbits;
  for (long l = 1; l < q; ++l) {
    if (seen[l]) continue;
    AdjointOrbit o;
    long e = l;
    do {
      o.elements.push_back(e);
      o.sum += e;
      seen[e] = true;
      e = mod_reduce(e * k, q);
    } while (e != l);
    std::sort(o.elements.begin(), o.elements.end());
    o.representative = o.elements.front();
    orbits.push_back(std::move(o));
  }
  std::stable_sort(orbits.begin(), orbits.end(), [](const AdjointOrbit& a, const AdjointOrbit& b) {
    if (a.sum != b.sum) return a.sum < b.sum;
    return a.representative < b.representative;
  });
  return orbits;
}

struct RationalIrreducible {
  std::string label;
  std::vector<size_t> constituents;  // indices into complex irreducibles
  long char_field_degree = 1;        // [K_chi : Q] of any constituent
};

struct Inventory {
  GroupSpec spec;
  ClassData classes;
  std::vector<Character> irreducibles;
  std::vector<RationalIrreducible> rationals;

  const Character& by_label(const std::string& l) const {
    for (const auto& c : irreducibles)
      if (c.label == l) return c;
    throw std::out_of_range("no irreducible labelled " + l);
  }
};

namespace detail {

inline std::vector<Character> gqn_irreducibles(const GroupSpec& s, const ClassData& cd) {
  const long E = s.exponent;  // q*n; zeta_q = zeta_E^n, omega_n = zeta_E^q
  std::vector<Character> out;
  for (long t = 0; t < s.n; ++t) {
    Character chi{s, "chi_" + std::to_string(t), {}, {}};
    for (const auto& cls : cd.classes)
      chi.values.push_back(RootSum::root(E, s.q * t * cls.representative.j));
    out.push_back(std::move(chi));
  }
  auto orbits = adjoint_orbits(s.q, s.k);
  for (size_t v = 0; v < orbits.size(); ++v) {
    Character chi{s, "V_" + std::to_string(v + 1), {}, orbits[v].elements};
    for (const auto& cls : cd.classes) {
      RootSum val = RootSum::zero(E);
      if (cls.representative.j == 0)
        for (long e : orbits[v].elements) val.add_root(s.n * e * cls.representative.i, 1);
      chi.values.push_back(std::move(val));
    }
    out.push_back(std::move(chi));
  }
  return out;
}

inline std::vector<Character> gm_irreducibles(const GroupSpec& s, const ClassData& cd) {
  const long E = s.exponent;  // 2^m
  std::vector<Character> out;
  // chi_0..chi_3 with the sign pattern of the paper's listing.
  const long signs[4][2] = {{0, 0}, {0, 1}, {1, 0}, {1, 1}};  // (a, b) -> (-1)^.
  for (int t = 0; t < 4; ++t) {
    Character chi{s, "chi_" + std::to_string(t), {}, {}};
    for (const auto& cls : cd.classes) {
      long e = (E / 2) * (signs[t][0] * cls.representative.i + signs[t][1] * cls.representative.j);
      chi.values.push_back(RootSum::root(E, e));
    }
    out.push_back(std::move(chi));
  }
  // Degree-2 irreducibles: a -> diag(xi^e, xi^(e d)), b -> swap; e ~ e*d.
  for (long e = 1; e < E; ++e) {
    if (e == E / 2) continue;
    long ed = mod_reduce(e * s.d, E);
    if (ed < e) continue;  // canonical representative of the pair
    std::string label;
    if (e % 2 == 1) {
      label = "U_" + std::to_string((e + 1) / 2);
    } else {
      long level = 0, f = e;
      while (f % 2 == 0) {
        ++level;
        f /= 2;
      }
      label = "T_" + std::to_string(level) + "." + std::to_string(f);
    }
    Character chi{s, label, {}, {e, ed}};
    for (const auto& cls : cd.classes) {
      RootSum val = RootSum::zero(E);
      if (cls.representative.j == 0) {
        val.add_root(e * cls.representative.i, 1);
        val.add_root(ed * cls.representative.i, 1);
      }
      chi.values.push_back(std::move(val));
    }
    out.push_back(std::move(chi));
  }
  return out;
}

}  // namespace detail

inline Inventory irreducible_inventory(const GroupSpec& s) {
  Inventory inv;
  inv.spec = s;
  inv.classes = ClassData::build(s);
  inv.irreducibles = s.family == Family::Gqn ? detail::gqn_irreducibles(s, inv.classes)
                                             : detail::gm_irreducibles(s, inv.classes);
  if (inv.irreducibles.size() != inv.classes.classes.size())
    throw std::logic_error("irreducible count != class count");

  // Rational irreducibles: Galois orbits on value vectors, computed explicitly.
  const size_t nirr = inv.irreducibles.size();
  std::vector<std::vector<CycloElement>> reduced(nirr);
  for (size_t i = 0; i < nirr; ++i)
    for (const auto& v : inv.irreducibles[i].values) reduced[i].push_back(v.to_cyclo());
  std::vector<bool> grouped(nirr, false);
  long w_counter = 0;
  for (size_t i = 0; i < nirr; ++i) {
    if (grouped[i]) continue;
    std::vector<size_t> orbit{i};
    std::vector<std::vector<CycloElement>> orbit_values{reduced[i]};
    grouped[i] = true;
    for (long t : units_mod(s.exponent)) {
      std::vector<CycloElement> img;
      img.reserve(reduced[i].size());
      for (const auto& v : reduced[i]) img.push_back(v.galois(t));
      bool fresh = std::find(orbit_values.begin(), orbit_values.end(), img) == orbit_values.end();
      if (fresh) orbit_values.push_back(img);
      for (size_t j = 0; j < nirr && fresh; ++j)
        if (!grouped[j] && reduced[j] == img) {
          grouped[j] = true;
          orbit.push_back(j);
          fresh = false;
        }
    }
    RationalIrreducible r;
    r.constituents = orbit;
    r.char_field_degree = static_cast<long>(orbit_values.size());
    r.label = orbit.size() == 1 && inv.irreducibles[i].exponents.empty()
                  ? inv.irreducibles[i].label
                  : "W_" + std::to_string(++w_counter);
    inv.rationals.push_back(std::move(r));
  }
  return inv;
}

/// Character of G induced by the trivial character of H:
/// chi_H(g) = |{x in G : x g x^-1 in H}| / |H|.
inline Character induced_trivial(const GroupSpec& s, const ClassData& cd, const Subgroup& H) {
  Character chi{s, "induced", {}, {}};
  for (const auto& cls : cd.classes) {
    long count = 0;
    for (const auto& x : all_elements(s))
      if (H.contains(mul(s, mul(s, x, cls.representative), inverse(s, x)))) ++count;
    if (count % H.size() != 0) throw std::logic_error("induced character: non-integral value");
    chi.values.push_back(RootSum::constant(s.exponent, count / H.size()));
  }
  return chi;
}

/// (1/|G|) sum_g chi1(g) conj(chi2(g)); exact, asserted rational.
inline Rational inner_product(const Inventory& inv, const Character& c1, const Character& c2) {
  if (!(c1.spec == inv.spec) || !(c2.spec == inv.spec)) throw SpecMismatch();
  RootSum acc = RootSum::zero(inv.spec.exponent);
  for (size_t c = 0; c < inv.classes.classes.size(); ++c)
    acc = acc + inv.classes.classes[c].size() * (c1.values[c] * c2.values[c].conj());
  CycloElement total = acc.to_cyclo();
  return total.rational_value() / inv.spec.order;
}

/// dim of the H-fixed subspace: <Res_H chi, 1> = (1/|H|) sum_{h in H} chi(h).
inline long fixed_dim(const Inventory& inv, const Character& chi, const Subgroup& H) {
  RootSum acc = RootSum::zero(inv.spec.exponent);
  for (const auto& h : H.elements) acc = acc + chi.at(inv.classes, h);
  Rational r = acc.to_cyclo().rational_value() / H.size();
  if (r.get_den() != 1) throw std::logic_error("fixed_dim: non-integral");
  return r.get_num().get_si();
}

/// Character of H^1(Y,Q) for a G-covering with base genus g0 and the given
/// monodromy: chi_Y = 2 chi_0 + (2 g0 - 2 + u) chi_reg - sum_j chi_<g_j>.
inline Character h1_character(const GroupSpec& s, const ClassData& cd, long g0,
                              const std::vector<GroupElement>& monodromy) {
  if (g0 < 0) throw std::invalid_argument("h1_character: negative base genus");
  validate_monodromy(s, monodromy);
  const long u = static_cast<long>(monodromy.size());
  Character chi{s, "chi_Y", {}, {}};
  for (const auto& cls : cd.classes) {
    long long v = 2;  // 2 chi_0
    if (cls.representative == identity_element()) v += (2 * g0 - 2 + u) * s.order;
    chi.values.push_back(RootSum::constant(s.exponent, v));
  }
  for (const auto& g : monodromy) {
    Character stab = induced_trivial(s, cd, subgroup_generated(s, {g}));
    for (size_t c = 0; c < chi.values.size(); ++c)
      chi.values[c] = chi.values[c] - stab.values[c];
  }
  return chi;
}

struct DecompositionRow {
  std::string label;
  long from_h1 = 0;      // multiplicity via Eq.-(2.1) evaluation
  long closed_form = 0;  // multiplicity via the G_{q,n} closed form
};

struct DecompositionReport {
  bool match = false;
  long r = 0, t = 0;
  std::vector<long> ramification;  // the n_j, sorted
  std::vector<DecompositionRow> rows;
};

/// Cross-checks the H^1 character of a genus-0 G_{q,n} covering against the
/// closed-form decomposition
///   chi_Y = (r-2) sum chi_i - sum_j sum_{n | (n/n_j) i} chi_i
///           + (n(r+t-2) - sum_j n/n_j)(chi_V1 + ... + chi_Vs).
inline DecompositionReport verify_decomposition(const Inventory& inv,
                                                const std::vector<GroupElement>& monodromy) {
  const GroupSpec& s = inv.spec;
  if (s.family != Family::Gqn) throw std::invalid_argument("verify_decomposition: Gqn only");
  DecompositionReport rep;
  for (const auto& g : monodromy) {
    long ord = element_order(s, g);
    if (ord == s.q) {
      ++rep.t;
    } else if (ord > 1 && s.n % ord == 0) {
      ++rep.r;
      rep.ramification.push_back(ord);
    } else {
      throw InvalidMonodromy("branch order neither divides n nor equals q");
    }
  }
  std::sort(rep.ramification.begin(), rep.ramification.end());
  Character h1 = h1_character(s, inv.classes, 0, monodromy);

  long v_coeff = s.n * (rep.r + rep.t - 2);
  for (long nj : rep.ramification) v_coeff -= s.n / nj;
  rep.match = true;
  for (const auto& chi : inv.irreducibles) {
    DecompositionRow row;
    row.label = chi.label;
    Rational m = inner_product(inv, h1, chi);
    if (m.get_den() != 1) throw std::logic_error("non-integral multiplicity");
    row.from_h1 = m.get_num().get_si();
    if (!chi.exponents.empty()) {
      row.closed_form = v_coeff;
    } else {
      long i = 0;  // chi = chi_i
      for (long t = 0; t < s.n; ++t)
        if (chi.label == "chi_" + std::to_string(t)) i = t;
      if (i == 0) {
        row.closed_form = 0;
      } else {
        row.closed_form = rep.r - 2;
        for (long nj : rep.ramification)
          if (((s.n / nj) * i) % s.n == 0) --row.closed_form;
      }
    }
    if (row.from_h1 != row.closed_form) rep.match = false;
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

struct IsotypicFactor {
  std::string label;
  long dimension = 0;  // dim B_i
  long power = 0;      // exponent of B_i in JY (Schur indices are 1 here)
  long jx_power = 0;   // exponent of B_i in JX = JY/H
};

struct IsotypicReport {
  std::vector<IsotypicFactor> factors;
  long genus_total = 0;  // sum dim * power, must equal g(Y)
  bool consistent = false;
};

/// Isotypic dimensions of JY for a genus-0 covering with branch stabilizers
/// G_j: dim B = [K_chi:Q] (-dim chi + (1/2) sum_j (dim chi - dim chi^{G_j})),
/// applied per rational irreducible (trivial factor has dimension g0 = 0).
inline IsotypicReport isotypic_dimensions(const Inventory& inv, const Character& h1,
                                          const std::vector<Subgroup>& stabilizers,
                                          const Subgroup& H) {
  IsotypicReport rep;
  for (const auto& rat : inv.rationals) {
    const Character& chi = inv.irreducibles[rat.constituents.front()];
    long deg = chi.degree(inv.classes);
    IsotypicFactor f;
    f.label = rat.label;
    f.power = deg;
    f.jx_power = fixed_dim(inv, chi, H);
    if (rat.constituents.size() == 1 && deg == 1 && chi.label == "chi_0") {
      f.dimension = 0;  // base is rational
    } else {
      long twice = -2 * deg;
      for (const auto& Gj : stabilizers) twice += deg - fixed_dim(inv, chi, Gj);
      long scaled = rat.char_field_degree * twice;
      if (scaled % 2 != 0) throw std::logic_error("isotypic dimension non-integral");
      f.dimension = scaled / 2;
      if (f.dimension < 0) throw std::logic_error("isotypic dimension negative");
    }
    rep.genus_total += f.dimension * f.power;
    rep.factors.push_back(std::move(f));
  }
  Rational degh1 = h1.values[inv.classes.identity_class].to_cyclo().rational_value();
  rep.consistent = Rational(2 * rep.genus_total) == degh1;
  return rep;
}

}  // namespace cmcurves
