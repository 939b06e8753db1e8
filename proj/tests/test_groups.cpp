#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cmcurves/groups.hpp"

using namespace cmcurves;

TEST_CASE("twist exponent selection") {
  CHECK(find_twist_exponent(7, 3) == 2);
  CHECK(find_twist_exponent(13, 3) == 3);
  CHECK(find_twist_exponent(61, 3) == 13);
  CHECK(find_twist_exponent(7, 3, true) == 4);  // the conjugate root q-1-k
  CHECK_THROWS_AS(find_twist_exponent(11, 3), NoSuchExponent);
  CHECK_THROWS_AS(find_twist_exponent(9, 3), NotPrime);
}

TEST_CASE("gqn presentation") {
  GroupSpec s = GroupSpec::gqn(7, 3);
  CHECK(s.order == 21);
  CHECK(s.exponent == 21);
  GroupElement a{1, 0}, b{0, 1};
  CHECK(element_order(s, a) == 7);
  CHECK(element_order(s, b) == 3);
  // b a b^-1 = a^k
  GroupElement conj = mul(s, mul(s, b, a), inverse(s, b));
  CHECK(conj == power(s, a, s.k));
  CHECK(mul(s, a, inverse(s, a)) == identity_element());
  CHECK(power(s, mul(s, a, b), 21) == identity_element());
  CHECK_THROWS_AS(GroupSpec::gqn(7, 3, 3), NoSuchExponent);  // ord_7(3) = 6
}

TEST_CASE("gm presentation") {
  GroupSpec s = GroupSpec::gm(4);
  CHECK(s.order == 32);
  CHECK(s.d == 7);
  GroupElement a{1, 0}, b{0, 1};
  CHECK(element_order(s, a) == 16);
  CHECK(element_order(s, b) == 2);
  CHECK(mul(s, mul(s, b, a), b) == power(s, a, s.d));
  CHECK(element_order(s, mul(s, a, b)) == 4);
  CHECK_THROWS(GroupSpec::gm(2));
}

TEST_CASE("subgroups and cosets") {
  GroupSpec s = GroupSpec::gqn(7, 3);
  Subgroup H = subgroup_generated(s, {GroupElement{0, 1}});
  CHECK(H.size() == 3);
  CHECK(H.contains(GroupElement{0, 2}));
  CHECK(!H.contains(GroupElement{1, 0}));
  CHECK(trivial_subgroup(s).size() == 1);
  CHECK(full_group(s).size() == 21);

  auto dc = double_cosets(s, H, H);
  CHECK(dc.size() == 3);  // 1 + (q-1)/3
  long total = 0;
  for (const auto& c : dc) total += static_cast<long>(c.size());
  CHECK(total == s.order);
}

TEST_CASE("conjugacy classes") {
  GroupSpec s = GroupSpec::gqn(7, 3);
  auto cls = conjugacy_classes(s);
  CHECK(cls.size() == 5);  // 3 + (q-1)/3
  long total = 0;
  for (const auto& c : cls) total += c.size();
  CHECK(total == 21);

  GroupSpec g = GroupSpec::gm(3);
  CHECK(conjugacy_classes(g).size() == 7);
}

TEST_CASE("monodromy validation") {
  GroupSpec s = GroupSpec::gqn(7, 3);
  GroupElement b{0, 1}, g2{mod_reduce(-s.k * s.k, 7), 2}, a{1, 0};
  validate_monodromy(s, {b, g2, a});
  CHECK_THROWS_AS(validate_monodromy(s, {b, g2}), InvalidMonodromy);
  CHECK_THROWS_AS(validate_monodromy(s, {b, identity_element(), inverse(s, b)}),
                  InvalidMonodromy);
}

TEST_CASE("quotient genus") {
  GroupSpec s = GroupSpec::gqn(7, 3);
  GroupElement b{0, 1}, g2{mod_reduce(-s.k * s.k, 7), 2}, a{1, 0};
  std::vector<GroupElement> mono{b, g2, a};
  CHECK(quotient_genus(s, 0, mono, trivial_subgroup(s)) == 3);
  CHECK(quotient_genus(s, 0, mono, subgroup_generated(s, {b})) == 1);
  CHECK(quotient_genus(s, 0, mono, full_group(s)) == 0);

  GroupSpec g = GroupSpec::gm(4);
  GroupElement ga{1, 0}, gb{0, 1};
  std::vector<GroupElement> gmono{ga, gb, inverse(g, mul(g, ga, gb))};
  CHECK(quotient_genus(g, 0, gmono, trivial_subgroup(g)) == 4);
  CHECK(quotient_genus(g, 0, gmono, subgroup_generated(g, {gb})) == 2);
  CHECK(quotient_genus(g, 0, gmono, subgroup_generated(g, {GroupElement{8, 0}})) == 0);
}
