#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cmcurves/curves.hpp"

using namespace cmcurves;

namespace {

Poly rational_poly(std::initializer_list<long> ascending) {
  std::vector<CycloElement> v;
  for (long c : ascending) v.push_back(CycloElement::from_rational(Rational(c)));
  return Poly(std::move(v));
}

}  // namespace

TEST_CASE("polynomial arithmetic") {
  Poly x = Poly::variable();
  Poly p = (x + Poly::constant(CycloElement::one())).pow(5);
  CHECK(p.degree() == 5);
  CHECK(p.coeff(2).rational_value() == 10);
  Poly q = x * x - Poly::constant(CycloElement::one());
  CHECK(Poly::gcd(q, x - Poly::constant(CycloElement::one())).degree() == 1);
  CHECK(q.is_squarefree());
  CHECK(!(q * q).is_squarefree());
  CHECK(q.eval(Rational(3) * CycloElement::one()).rational_value() == 8);
  CHECK(q.compose(x + Poly::constant(CycloElement::one())) ==
        x * x + Rational(2) * CycloElement::one() * x);
}

TEST_CASE("rational functions") {
  RatFunc x = RatFunc::variable();
  RatFunc r = (x * x - RatFunc::constant(CycloElement::one())) /
              (x - RatFunc::constant(CycloElement::one()));
  CHECK(r == x + RatFunc::constant(CycloElement::one()));  // equality cross-multiplies
  CHECK(r.pow(-1) * r == RatFunc::constant(CycloElement::one()));
  CHECK(r.eval(Rational(2) * CycloElement::one()) == Rational(3) * CycloElement::one());
}

TEST_CASE("gq3 model shape") {
  Gq3Model mdl = gq3_model(7, 2);
  CHECK(mdl.m_int == 1);    // (k^3 - 1)/q = 7/7
  CHECK(mdl.m_prime == 1);  // (k^2 + k + 1)/q
  CHECK(mdl.F.degree() == 7);  // 1 + k + k^2
  CHECK(mdl.sigma.e == 1);
  CHECK(mdl.tau.e == 2);
  CHECK(mdl.F_pow(2) == mdl.F * mdl.F);
  CHECK_THROWS_AS(gq3_model(7, 4), BadTwist);
  CHECK_THROWS_AS(gq3_model(11, 2), BadTwist);
}

TEST_CASE("gq3 automorphisms verify symbolically") {
  for (long q : {7L, 13L}) {
    Gq3Model mdl = gq3_model(q, find_twist_exponent(q, 3));
    AutoReport rep = verify_gq3_automorphisms(mdl);
    CHECK(rep.curve_preserved);
    CHECK(rep.relations_hold);
    CHECK(rep.checked == std::vector<std::string>{"tau_transport", "curve_preservation",
                                                  "orders", "metacyclic_relation"});
  }
}

TEST_CASE("tampered gq3 model fails") {
  Gq3Model mdl = gq3_model(7, 2);
  mdl.sigma.C = RatFunc::constant(CycloElement::root_of_unity(21, 1));  // wrong root
  CHECK_THROWS_AS(verify_gq3_automorphisms(mdl), IdentityFailed);

  Gq3Model mdl2 = gq3_model(7, 2);
  mdl2.tau.e = 3;  // wrong y-exponent
  CHECK_THROWS_AS(verify_gq3_automorphisms(mdl2), IdentityFailed);
}

TEST_CASE("gm automorphisms verify symbolically") {
  for (long m : {3L, 4L, 5L}) {
    GmModel mdl = gm_model(m);
    CHECK(mdl.f.degree() == (1L << (m - 1)) + 1);
    AutoReport rep = verify_gm_automorphisms(mdl);
    CHECK(rep.curve_preserved);
    CHECK(rep.relations_hold);
    CHECK(rep.checked == std::vector<std::string>{"curve_preservation", "orders",
                                                  "metacyclic_relation", "fixed_points"});
  }
  CHECK_THROWS(gm_model(2));
}

TEST_CASE("tampered gm model fails") {
  GmModel mdl = gm_model(3);
  mdl.b.C = -mdl.b.C;  // flips the sign convention for i = xi^(2^(m-2))
  CHECK_THROWS_AS(verify_gm_automorphisms(mdl), IdentityFailed);
}

TEST_CASE("gm quotient models") {
  for (long m : {3L, 4L, 5L}) {
    GmQuotientModel q = gm_quotient_model(m);
    CHECK(q.genus == (1L << (m - 3)));
    CHECK(q.model.degree() == 2 * q.genus + 2);
    CHECK(q.model.is_squarefree());
  }
}

TEST_CASE("igusa invariants reproduce the reference triple") {
  Poly quintic = rational_poly({1, -3, -6, 2, 3, -1});
  IgusaInvariants iv = igusa_clebsch(quintic);
  CHECK(iv.i1.rational_value() == 1836660096);
  CHECK(iv.i2.rational_value() == 28343520);
  CHECK(iv.i3.rational_value() == 9762768);
  // factorizations pinned: 2^7 3^15, 2^5 3^11 5, 2^4 3^9 31
  CHECK(1836660096 == 128L * 14348907L);
  CHECK(28343520 == 32L * 177147L * 5L);
  CHECK(9762768 == 16L * 19683L * 31L);

  GmQuotientModel q4 = gm_quotient_model(4);
  IgusaInvariants qv = igusa_clebsch(q4.model);
  CHECK(qv.i1 == iv.i1);
  CHECK(qv.i2 == iv.i2);
  CHECK(qv.i3 == iv.i3);
  CHECK(isomorphism_check(q4.model, quintic));
}

TEST_CASE("igusa rejects bad input") {
  Poly x = Poly::variable();
  CHECK_THROWS_AS(igusa_clebsch(x.pow(4) - Poly::constant(CycloElement::one())), WrongDegree);
  CHECK_THROWS_AS(igusa_clebsch(x.pow(6)), SingularModel);
  CHECK_THROWS_AS(igusa_clebsch(x.pow(2) * (x.pow(4) - Poly::constant(CycloElement::one()))),
                  SingularModel);
}
