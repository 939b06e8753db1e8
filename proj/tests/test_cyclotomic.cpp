#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cmcurves/certified_sign.hpp"
#include "cmcurves/cyclotomic.hpp"

using namespace cmcurves;

TEST_CASE("power basis reduction") {
  // sum of all q-th roots of unity vanishes
  for (long n : {5L, 7L, 12L, 16L}) {
    CycloElement s = CycloElement::zero(n);
    for (long e = 0; e < n; ++e) s = s + CycloElement::root_of_unity(n, e);
    CHECK(s.is_zero());
  }
  CHECK(phi_of(7) == 6);
  CHECK(phi_of(16) == 8);
  CHECK(phi_of(21) == 12);
  // zeta_7^6 reduces out of the power basis: 1 + zeta + ... + zeta^6 = 0
  CycloElement z = CycloElement::root_of_unity(7, 1);
  CycloElement high = CycloElement::root_of_unity(7, 6);
  CHECK(z * high == CycloElement::one(7));
}

TEST_CASE("field operations") {
  CycloElement z = CycloElement::root_of_unity(9, 1);
  CycloElement x = z + Rational(3) * CycloElement::one(9);
  CHECK(x * x.inverse() == CycloElement::one(9));
  CHECK((x - x).is_zero());
  CHECK(x + (-x) == CycloElement::zero(9));
  CHECK_THROWS_AS(CycloElement::zero(9).inverse(), DivisionByZero);
  CHECK(cyclo_pow(z, 9) == CycloElement::one(9));
  CHECK(cyclo_pow(x, 3) == x * x * x);
  CHECK(cyclo_pow(x, -2) == (x * x).inverse());
}

TEST_CASE("promotion and mixed conductors") {
  CycloElement w3 = CycloElement::root_of_unity(3, 1);
  CycloElement z21 = CycloElement::root_of_unity(21, 7);
  CHECK(w3.promote(21) == z21);
  CHECK(w3 + z21 == Rational(2) * z21);  // alignment happens implicitly
  CHECK_THROWS(w3.promote(5));
}

TEST_CASE("galois action and conjugation") {
  CycloElement z = CycloElement::root_of_unity(7, 1);
  CHECK(z.galois(2) == CycloElement::root_of_unity(7, 2));
  CHECK(z.conjugate() == CycloElement::root_of_unity(7, 6));
  CHECK_THROWS_AS(z.galois(7), BadExponent);
  CycloElement real = z + z.conjugate();
  CHECK(real == real.conjugate());
  auto [orbit, deg] = orbit_and_degree(real);
  CHECK(deg == 3);  // maximal real subfield of Q(zeta_7)
  CHECK(fixing_subgroup(real) == std::vector<long>{1, 6});
  GaloisAuto g(7, 3);
  CHECK(g.compose(g).exponent == 2);
  CHECK(g(z) == CycloElement::root_of_unity(7, 3));
}

TEST_CASE("root sums reduce to canonical form") {
  RootSum a = RootSum::root(7, 1) + RootSum::root(7, 2);
  RootSum b = RootSum::root(7, 2) + RootSum::root(7, 1);
  CHECK(a.equals(b));
  RootSum all = RootSum::zero(7);
  for (long e = 0; e < 7; ++e) all = all + RootSum::root(7, e);
  CHECK(all.equals(RootSum::zero(7)));  // equal only after reduction mod Phi_7
  CHECK(!all.terms.empty());            // but kept unreduced internally
  CHECK((a * a.conj()).to_cyclo().conjugate() == (a * a.conj()).to_cyclo());
}

TEST_CASE("certified signs") {
  // zeta_8 + zeta_8^-1 = sqrt(2)
  CycloElement sqrt2 = CycloElement::root_of_unity(8, 1) + CycloElement::root_of_unity(8, 7);
  CHECK(certified_sign(sqrt2) == 1);
  CHECK(certified_sign(-sqrt2) == -1);
  CHECK(certified_sign(sqrt2 - sqrt2) == 0);
  // 2 cos(2 pi / 5) > 0 but its Galois conjugate 2 cos(4 pi / 5) < 0
  CycloElement c5 = CycloElement::root_of_unity(5, 1) + CycloElement::root_of_unity(5, 4);
  CHECK(certified_sign(c5) == 1);
  CHECK(certified_sign(c5, 2) == -1);
  CHECK(!is_totally_positive(c5));
  CHECK(is_totally_positive(Rational(2) * CycloElement::one(5) + c5));
  CHECK_THROWS_AS(certified_sign(CycloElement::root_of_unity(5, 1)), NotReal);
}

TEST_CASE("sign is stable under precision escalation") {
  CycloElement x = CycloElement::root_of_unity(24, 1) + CycloElement::root_of_unity(24, 23) -
                   Rational(193, 100) * CycloElement::one(24);
  // 2 cos(pi/12) = 1.93185...; the margin is ~1e-3, so low precision escalates
  for (long prec : {64L, 256L, 4096L, 65536L}) CHECK(certified_sign(x, 1, prec) == 1);
}

TEST_CASE("serialization grammar") {
  CycloElement x = Rational(1, 2) * CycloElement::root_of_unity(5, 1) - CycloElement::one(5);
  CHECK(x.to_string() == "-1 + 1/2*zeta(5)");
  CHECK(CycloElement::zero(5).to_string() == "0");
}
