// Acceptance gate: one line per criterion, nonzero exit on any failure.
// Everything below is exact arithmetic; no tolerances anywhere.

#include <cstdio>
#include <map>
#include <random>

#include "cmcurves/certificates.hpp"

using namespace cmcurves;

namespace {

const std::vector<long> kQ = {7, 13, 19, 31, 37, 43, 61};
const std::vector<long> kM = {3, 4, 5, 6, 7};

int failures = 0;

void report(int idx, const char* name, bool pass) {
  std::printf("criterion %2d  %-52s %s\n", idx, name, pass ? "PASS" : "FAIL");
  std::fflush(stdout);
  if (!pass) ++failures;
}

template <typename Fn>
void criterion(int idx, const char* name, Fn fn) {
  bool pass = false;
  try {
    pass = fn();
  } catch (const std::exception& e) {
    std::printf("              exception: %s\n", e.what());
    pass = false;
  }
  report(idx, name, pass);
}

struct FamilyData {
  GroupSpec spec;
  Inventory inv;
  std::vector<GroupElement> mono;
  Subgroup H;  // <b>
  H0Decomposition dec;
};

FamilyData build(const GroupSpec& spec) {
  FamilyData d{spec, irreducible_inventory(spec), canonical_monodromy(spec),
               subgroup_generated(spec, {GroupElement{0, 1}}), {}};
  d.dec = h0_decomposition(d.inv, d.mono);
  return d;
}

/// Random product-one tuple generating the whole group, 3 to 5 branch points.
/// Every non-identity element of G_{q,3} has order 3 or q, so any such tuple
/// is an admissible genus-0 signature.
std::vector<GroupElement> random_monodromy(const GroupSpec& s, std::mt19937& rng) {
  std::uniform_int_distribution<long> ui(0, s.q - 1), uj(0, 2), uu(3, 5);
  while (true) {
    long u = uu(rng);
    std::vector<GroupElement> mono;
    GroupElement prod = identity_element();
    for (long t = 0; t + 1 < u; ++t) {
      GroupElement g{ui(rng), uj(rng)};
      if (g == identity_element()) g = GroupElement{1, 0};
      mono.push_back(g);
      prod = mul(s, prod, g);
    }
    GroupElement last = inverse(s, prod);
    if (last == identity_element()) continue;
    mono.push_back(last);
    if (subgroup_generated(s, mono).size() != s.order) continue;
    return mono;
  }
}

}  // namespace

int main() {
  std::map<long, FamilyData> gq, gm;
  for (long q : kQ) gq.emplace(q, build(GroupSpec::gqn(q, 3)));
  for (long m : kM) gm.emplace(m, build(GroupSpec::gm(m)));

  criterion(1, "genus identities for both families", [&] {
    for (long q : kQ) {
      const FamilyData& d = gq.at(q);
      if (quotient_genus(d.spec, 0, d.mono, trivial_subgroup(d.spec)) != (q - 1) / 2) return false;
      if (quotient_genus(d.spec, 0, d.mono, d.H) != (q - 1) / 6) return false;
    }
    for (long m : kM) {
      const FamilyData& d = gm.at(m);
      long n = 1L << m;
      if (quotient_genus(d.spec, 0, d.mono, trivial_subgroup(d.spec)) != n / 4) return false;
      if (quotient_genus(d.spec, 0, d.mono, d.H) != n / 8) return false;
      Subgroup Hj = subgroup_generated(d.spec, {GroupElement{n / 2, 0}});
      if (quotient_genus(d.spec, 0, d.mono, Hj) != 0) return false;
    }
    return true;
  });

  criterion(2, "character identities, incl. randomized monodromy", [&] {
    for (long m : kM) {
      const FamilyData& d = gm.at(m);
      Character h1 = h1_character(d.spec, d.inv.classes, 0, d.mono);
      const RationalIrreducible* w1 = nullptr;
      for (const auto& r : d.inv.rationals)
        if (r.label == "W_1") w1 = &r;
      if (!w1) return false;
      Character sum = d.inv.irreducibles[w1->constituents.front()];
      for (size_t i = 1; i < w1->constituents.size(); ++i)
        sum = sum + d.inv.irreducibles[w1->constituents[i]];
      if (!same_character(h1, sum)) return false;
    }
    std::mt19937 rng(20240817);
    for (long q : {7L, 13L}) {
      const FamilyData& d = gq.at(q);
      if (!verify_decomposition(d.inv, d.mono).match) return false;
      for (int trial = 0; trial < 5; ++trial)
        if (!verify_decomposition(d.inv, random_monodromy(d.spec, rng)).match) return false;
    }
    return true;
  });

  criterion(3, "orbit lemma suite with certified beta signs", [&] {
    for (long q : kQ) {
      long k = gq.at(q).spec.k;
      if (1 + k + mod_reduce(k * k, q) != q) return false;
      OrbitPartition part = verify_orbit_classification(q, k);
      long first = 0, second = 0;
      std::vector<bool> half(q, false);
      for (const auto& o : part.orbits) {
        (o.first_half ? first : second)++;
        for (long e : o.elements) half[e] = o.first_half;
      }
      if (first != (q - 1) / 6 || second != (q - 1) / 6) return false;
      std::vector<int> sign(q, 0);
      for (long l = 1; l < q; ++l) {
        sign[l] = beta_sign(q, k, l);
        if ((sign[l] > 0) != half[l]) return false;
      }
      for (long l = 1; l < q; ++l)
        if (sign[q - l] != -sign[l]) return false;
    }
    return true;
  });

  criterion(4, "Chevalley-Weil multiplicities", [&] {
    for (long q : kQ) {
      const FamilyData& d = gq.at(q);
      long s2 = (q - 1) / 6, degsum = 0;
      for (size_t i = 0; i < d.inv.irreducibles.size(); ++i) {
        const Character& chi = d.inv.irreducibles[i];
        long N = d.dec.multiplicities[i].second;
        long idx = 0;
        if (std::sscanf(chi.label.c_str(), "V_%ld", &idx) == 1) {
          if (N != (idx <= s2 ? 1 : 0)) return false;  // conjugates get 0
        } else if (N != 0) {
          return false;
        }
        degsum += N * chi.degree(d.inv.classes);
      }
      if (degsum != (q - 1) / 2) return false;
    }
    for (long m : kM) {
      const FamilyData& d = gm.at(m);
      long u_count = 1L << (m - 3), degsum = 0;
      for (size_t i = 0; i < d.inv.irreducibles.size(); ++i) {
        const Character& chi = d.inv.irreducibles[i];
        long N = d.dec.multiplicities[i].second;
        long idx = 0;
        if (std::sscanf(chi.label.c_str(), "U_%ld", &idx) == 1 && idx <= u_count) {
          if (N != 1) return false;
        } else if (N != 0) {
          return false;  // U' conjugates, T levels, linear characters
        }
        degsum += N * chi.degree(d.inv.classes);
      }
      if (degsum != (1L << (m - 2))) return false;
    }
    return true;
  });

  criterion(5, "signature classification is the expected singleton", [&] {
    auto found = signature_search(15, 10);
    return found.size() == 1 && found[0].n == 3 && found[0].r == 2 && found[0].t == 1 &&
           found[0].orders == std::vector<long>{3, 3};
  });

  criterion(6, "isotypic dimensions and double-coset algebra", [&] {
    for (long q : kQ) {
      const FamilyData& d = gq.at(q);
      Character h1 = h1_character(d.spec, d.inv.classes, 0, d.mono);
      std::vector<Subgroup> stabs;
      for (const auto& g : d.mono) stabs.push_back(subgroup_generated(d.spec, {g}));
      IsotypicReport iso = isotypic_dimensions(d.inv, h1, stabs, d.H);
      if (!iso.consistent || iso.genus_total != (q - 1) / 2) return false;
      long jx_dim = 0;
      for (const auto& f : iso.factors) {
        if (f.label == "chi_0" && f.dimension != 0) return false;
        if (f.dimension > 0 && f.power != 3 * f.jx_power) return false;  // JY ~ JX^3
        jx_dim += f.dimension * f.jx_power;
      }
      if (jx_dim != (q - 1) / 6) return false;
      Character chiH = induced_trivial(d.spec, d.inv.classes, d.H);
      if (inner_product(d.inv, chiH, chiH) != Rational(1 + (q - 1) / 3)) return false;
      if (static_cast<long>(double_cosets(d.spec, d.H, d.H).size()) != 1 + (q - 1) / 3)
        return false;
    }
    for (long m : kM) {
      const FamilyData& d = gm.at(m);
      Character h1 = h1_character(d.spec, d.inv.classes, 0, d.mono);
      std::vector<Subgroup> stabs;
      for (const auto& g : d.mono) stabs.push_back(subgroup_generated(d.spec, {g}));
      IsotypicReport iso = isotypic_dimensions(d.inv, h1, stabs, d.H);
      if (!iso.consistent || iso.genus_total != (1L << (m - 2))) return false;
      long jx_dim = 0;
      for (const auto& f : iso.factors) {
        if (f.dimension > 0 && f.power != 2 * f.jx_power) return false;  // JY ~ JX^2
        jx_dim += f.dimension * f.jx_power;
      }
      if (jx_dim != (1L << (m - 3))) return false;
    }
    return true;
  });

  criterion(7, "primitivity and simplicity oracles agree", [&] {
    for (long q : kQ) {
      const FamilyData& d = gq.at(q);
      CMType jx = cm_type_jx(d.inv, d.dec);
      bool coset = is_primitive_coset(jx).primitive;
      bool st = is_primitive_shimura_taniyama(alpha_element(q, d.spec.k, 1));
      if (!coset || !st) return false;
    }
    for (long m : kM) {
      GmSimplicityReport rep = gm_simplicity(m);
      if (!rep.simple || !rep.galois_group_cyclic) return false;
      for (const auto& row : rep.lattice)
        if (row.subgroup_order > 1 && !row.real) return false;
    }
    return true;
  });

  criterion(8, "symbolic automorphism verification", [&] {
    for (long q : {7L, 13L}) {
      AutoReport rep = verify_gq3_automorphisms(gq3_model(q, gq.at(q).spec.k));
      if (!rep.curve_preserved || !rep.relations_hold) return false;
    }
    for (long m : {3L, 4L, 5L}) {
      AutoReport rep = verify_gm_automorphisms(gm_model(m));
      if (!rep.curve_preserved || !rep.relations_hold) return false;
    }
    return true;
  });

  criterion(9, "Igusa invariant triple from three models", [&] {
    Poly quintic = detail::reference_quintic();
    Poly sextic = detail::reference_sextic();
    Poly quotient = gm_quotient_model(4).model;
    for (const Poly* p : {&quintic, &sextic, &quotient}) {
      IgusaInvariants iv = igusa_clebsch(*p);
      if (iv.i1.rational_value() != 1836660096) return false;
      if (iv.i2.rational_value() != 28343520) return false;
      if (iv.i3.rational_value() != 9762768) return false;
    }
    return isomorphism_check(quintic, sextic) && isomorphism_check(quintic, quotient) &&
           isomorphism_check(sextic, quotient);
  });

  criterion(10, "property suites", [&] {
    // character-table orthogonality
    for (const GroupSpec& s : {GroupSpec::gqn(7, 3), GroupSpec::gqn(13, 3), GroupSpec::gm(3),
                               GroupSpec::gm(4)}) {
      Inventory inv = irreducible_inventory(s);
      for (size_t i = 0; i < inv.irreducibles.size(); ++i)
        for (size_t j = 0; j < inv.irreducibles.size(); ++j)
          if (inner_product(inv, inv.irreducibles[i], inv.irreducibles[j]) !=
              Rational(i == j ? 1 : 0))
            return false;
    }
    // CM-type axiom on every emitted type
    for (long q : kQ) {
      const FamilyData& d = gq.at(q);
      if (!cm_type_axiom_holds(cm_type_jy(d.inv, d.dec))) return false;
      if (!cm_type_axiom_holds(cm_type_jx(d.inv, d.dec))) return false;
    }
    for (long m : kM) {
      const FamilyData& d = gm.at(m);
      if (!cm_type_axiom_holds(cm_type_jy(d.inv, d.dec))) return false;
      if (!cm_type_axiom_holds(cm_type_jx(d.inv, d.dec))) return false;
    }
    // double-coset partitions cover the group
    for (long q : {7L, 13L}) {
      const FamilyData& d = gq.at(q);
      long total = 0;
      for (const auto& c : double_cosets(d.spec, d.H, d.H)) total += static_cast<long>(c.size());
      if (total != d.spec.order) return false;
    }
    // certified signs are stable under precision escalation
    for (long l = 1; l < 7; ++l) {
      CycloElement beta = beta_element(7, 2, l);
      int s64 = certified_sign(beta, 1, 64);
      if (certified_sign(beta, 1, 1024) != s64) return false;
      if (certified_sign(beta, 1, 1 << 14) != s64) return false;
    }
    // JSON determinism and round-trip
    Certificate a = gq3_certificate(7), b = gq3_certificate(7);
    if (a.full().dump() != b.full().dump()) return false;
    if (Json::parse(a.full().dump()) != a.full()) return false;
    Certificate g1 = gm_certificate(3), g2 = gm_certificate(3);
    if (g1.hash != g2.hash) return false;
    return true;
  });

  if (failures) std::printf("%d criterion(s) failed\n", failures);
  return failures ? 1 : 0;
}
