#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cmcurves/certificates.hpp"

using namespace cmcurves;

TEST_CASE("value encodings round-trip") {
  Rational r(-22, 7);
  CHECK(rational_from_json(rational_to_json(r)) == r);
  CycloElement x = Rational(1, 3) * CycloElement::root_of_unity(12, 5) - CycloElement::one(12);
  CHECK(cyclo_from_json(cyclo_to_json(x)) == x);
  Poly p = (Poly::variable() - Poly::constant(x)).pow(3);
  CHECK(poly_from_json(poly_to_json(p)) == p);
}

TEST_CASE("gq3 certificate q=7") {
  Certificate c = gq3_certificate(7);
  CHECK(c.ok());
  const Json& b = c.payload.at("blocks");
  CHECK(b.at("genus").at("g_Y") == 3);
  CHECK(b.at("genus").at("g_X") == 1);
  CHECK(b.at("character").at("closed_form_match") == true);
  CHECK(b.at("cm_type").at("jy_isogenous_to") == "JX^3");
  CHECK(b.at("cm_type").at("hecke_dimension") == 3);
  CHECK(b.at("primitivity").at("coset") == true);
  CHECK(b.at("primitivity").at("shimura_taniyama") == true);
  CHECK(b.at("primitivity").at("agree") == true);
  CHECK(b.at("curve").at("status") == "verified");
  CHECK(b.at("igusa").at("status") == "skipped");
  CHECK(render_text(c).find("== genus: verified") != std::string::npos);
}

TEST_CASE("gq3 certificate q=13 carries the CM exponents") {
  Certificate c = gq3_certificate(13);
  CHECK(c.ok());
  Json exps = c.payload.at("blocks").at("cm_type").at("jy_exponents");
  CHECK(exps == Json::array({1, 2, 3, 5, 6, 9}));
}

TEST_CASE("bad parameters are rejected up front") {
  CHECK_THROWS_AS(gq3_certificate(11), BadParameter);
  CHECK_THROWS_AS(gq3_certificate(12), BadParameter);
  CHECK_THROWS_AS(gq3_certificate(7, 4), BadParameter);  // conjugate root, not canonical
  CHECK_THROWS_AS(gm_certificate(2), BadParameter);
  CHECK_THROWS_AS(search_certificate(1, 10), BadParameter);
}

TEST_CASE("gm certificate m=3") {
  Certificate c = gm_certificate(3);
  CHECK(c.ok());
  const Json& b = c.payload.at("blocks");
  CHECK(b.at("genus").at("g_Y") == 2);
  CHECK(b.at("genus").at("g_X") == 1);
  CHECK(b.at("genus").at("g_Y_mod_j") == 0);
  CHECK(b.at("character").at("chi_Y_equals_W1") == true);
  CHECK(b.at("cm_type").at("jx_field_degree") == 2);
  CHECK(b.at("cm_type").at("jy_isogenous_to") == "JX^2");
  CHECK(b.at("primitivity").at("simple") == true);
  CHECK(b.at("igusa").at("status") == "skipped");
}

TEST_CASE("gm certificate m=4 with igusa") {
  Certificate c = gm_certificate(4, true);
  CHECK(c.ok());
  const Json& ig = c.payload.at("blocks").at("igusa");
  CHECK(ig.at("status") == "verified");
  CHECK(ig.at("i1") == "1836660096");
  CHECK(ig.at("i2") == "28343520");
  CHECK(ig.at("i3") == "9762768");
  CHECK(ig.at("isomorphic_to_reference_quintic") == true);
  CHECK(ig.at("isomorphic_to_reference_sextic") == true);
}

TEST_CASE("gm certificate m=5 with igusa skips the invariants") {
  Certificate c = gm_certificate(5, true);
  CHECK(c.ok());
  CHECK(c.payload.at("blocks").at("igusa").at("status") == "skipped");
}

TEST_CASE("search certificate") {
  Certificate c = search_certificate(15, 10);
  CHECK(c.ok());
  const Json& sig = c.payload.at("blocks").at("signature");
  CHECK(sig.at("matches_expected_family") == true);
  REQUIRE(sig.at("solutions").size() == 1);
  CHECK(sig.at("solutions")[0].at("n") == 3);
  CHECK(sig.at("solutions")[0].at("orders") == Json::array({3, 3}));
  CHECK(sig.at("solutions")[0].at("t") == 1);
}

TEST_CASE("payloads are deterministic and round-trip") {
  Certificate a = gq3_certificate(7);
  Certificate b = gq3_certificate(7);
  CHECK(a.payload.dump() == b.payload.dump());
  CHECK(a.hash == b.hash);
  CHECK(Json::parse(a.full().dump()) == a.full());

  Certificate g1 = gm_certificate(3);
  Certificate g2 = gm_certificate(3);
  CHECK(g1.full().dump() == g2.full().dump());
}

TEST_CASE("hash covers the payload") {
  Certificate a = gq3_certificate(7);
  CHECK(a.hash == fnv1a64_hex(a.payload.dump()));
  CHECK(a.hash.size() == 16);
  CHECK(a.hash != gm_certificate(3).hash);
}
