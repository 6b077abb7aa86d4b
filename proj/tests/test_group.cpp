#include <catch_amalgamated.hpp>

#include <set>

#include "gpdlab/group.hpp"
#include "oracles.hpp"

using namespace gpdlab;

TEST_CASE("validate_group reports the first failing axiom", "[group]") {
  SECTION("accepts Z/2") {
    auto g = validate_group({{0, 1}, {1, 0}}, 0);
    CHECK(g.order() == 2);
    CHECK(g.inv(1) == 1);
  }
  SECTION("shape") {
    CHECK_THROWS_AS(validate_group({{0, 1}, {1}}, 0), AxiomViolation);
    CHECK_THROWS_AS(validate_group({{0, 2}, {1, 0}}, 0), AxiomViolation);
  }
  SECTION("missing inverse is reported before the latin-square failure") {
    try {
      validate_group({{0, 1}, {1, 1}}, 0);
      FAIL("expected AxiomViolation");
    } catch (const AxiomViolation& e) {
      CHECK(e.kind() == "no-inverse");
      CHECK(e.witness() == std::vector<std::size_t>{1});
    }
  }
  SECTION("associativity") {
    // a latin square with identity 0 that is not associative (order 5 loop)
    Table t = {{0, 1, 2, 3, 4}, {1, 0, 3, 4, 2}, {2, 4, 0, 1, 3}, {3, 2, 4, 0, 1}, {4, 3, 1, 2, 0}};
    try {
      validate_group(t, 0);
      FAIL("expected AxiomViolation");
    } catch (const AxiomViolation& e) {
      CHECK(e.kind() == "associativity");
      REQUIRE(e.witness().size() == 3);
      const auto& w = e.witness();
      CHECK(t[t[w[0]][w[1]]][w[2]] != t[w[0]][t[w[1]][w[2]]]);
    }
  }
}

TEST_CASE("standard constructors", "[group]") {
  CHECK(cyclic(5).order() == 5);
  CHECK(symmetric(3).order() == 6);
  CHECK(dihedral(4).order() == 8);
  CHECK(quaternion8().order() == 8);
  CHECK(make_standard_group("product:cyclic:2,cyclic:2").order() == 4);
  CHECK(make_standard_group("trivial").order() == 1);
  CHECK_THROWS_AS(make_standard_group("cyclic:x"), InputError);
  CHECK_THROWS_AS(make_standard_group("wreath:2"), InputError);
  CHECK_THROWS_AS(cyclic(0), UnsupportedSize);
  CHECK_THROWS_AS(cyclic(65), UnsupportedSize);
  CHECK(symmetric(3).label(0) == "123");
  CHECK(quaternion8().label(2) == "i");
}

TEST_CASE("quaternion relations", "[group]") {
  auto q = quaternion8();
  // i^2 = j^2 = k^2 = ijk = -1
  CHECK(q.mul(2, 2) == 1);
  CHECK(q.mul(4, 4) == 1);
  CHECK(q.mul(6, 6) == 1);
  CHECK(q.mul(q.mul(2, 4), 6) == 1);
  CHECK_FALSE(q.is_abelian());
}

TEST_CASE("center against the conjugation oracle", "[group][oracle]") {
  for (const auto& [name, g] : oracle::small_groups()) {
    INFO(name);
    const auto z = center(g);
    CHECK(z.members == oracle::center_by_conjugation(g));
    CHECK(is_normal(z));
    CHECK(g.order() % z.order() == 0);
  }
  // frozen values from the oracle
  CHECK(center(symmetric(3)).order() == 1);
  CHECK(center(dihedral(4)).order() == 2);
  CHECK(center(quaternion8()).order() == 2);
  CHECK(center(make_standard_group("product:cyclic:2,cyclic:2")).order() == 4);
  CHECK(center(dihedral(3)).order() == 1);
}

TEST_CASE("isomorphism_search", "[group]") {
  CHECK(isomorphic(cyclic(6), make_standard_group("product:cyclic:2,cyclic:3")));
  CHECK_FALSE(isomorphic(cyclic(4), make_standard_group("product:cyclic:2,cyclic:2")));
  CHECK_FALSE(isomorphic(dihedral(4), quaternion8()));
  CHECK(isomorphic(dihedral(3), symmetric(3)));
  CHECK_THROWS_AS(isomorphism_search(cyclic(2), cyclic(3)), OrderMismatch);

  SECTION("result is a homomorphism and deterministic") {
    auto a = isomorphism_search(dihedral(3), symmetric(3));
    auto b = isomorphism_search(dihedral(3), symmetric(3));
    REQUIRE(a);
    CHECK(a == b);
    CHECK(is_isomorphism(dihedral(3), symmetric(3), *a));
  }
  SECTION("agrees with brute force on every pair of small groups") {
    auto groups = oracle::small_groups();
    for (const auto& [n1, g] : groups)
      for (const auto& [n2, h] : groups) {
        if (g.order() != h.order() || g.order() > 6) continue;
        INFO(n1 << " vs " << n2);
        CHECK(isomorphic(g, h) == oracle::isomorphic_brute_force(g, h));
      }
  }
}

TEST_CASE("permutation groups", "[group]") {
  std::vector<Permutation> s3;
  Permutation p{0, 1, 2};
  do s3.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  auto g = group_from_permutations(s3);
  CHECK(g.order() == 6);
  CHECK(g.identity() == 0);
  CHECK(isomorphic(g, symmetric(3)));
  CHECK_THROWS_AS(group_from_permutations({{0, 1, 2}, {1, 2, 0}}), AxiomViolation);
}

TEST_CASE("regular action and subgroups", "[group]") {
  auto g = dihedral(4);
  auto act = regular_action(g);
  CHECK(act.is_valid());
  CHECK(act.is_regular());
  auto rot = make_subgroup(g, {0, 1, 2, 3});
  CHECK(is_normal(rot));
  CHECK(isomorphic(subgroup_as_group(rot), cyclic(4)));
  CHECK_THROWS_AS(make_subgroup(g, {0, 1}), AxiomViolation);
  CHECK_FALSE(is_normal(make_subgroup(g, {0, 4})));
  CHECK(centralizes(center(g), make_subgroup(g, {0, 1, 2, 3, 4, 5, 6, 7})));
}
