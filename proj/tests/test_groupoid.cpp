#include <catch_amalgamated.hpp>

#include "gpdlab/groupoid.hpp"
#include "oracles.hpp"

using namespace gpdlab;

namespace {

std::size_t mor(const FiniteGroupoid& g, std::size_t order, std::size_t a, std::size_t x, std::size_t b) {
  return standard_morphism(g.object_count(), order, a, x, b);
}

}  // namespace

TEST_CASE("standard groupoid shape", "[groupoid]") {
  auto g = build_standard_groupoid(cyclic(2), 3);
  CHECK(g.object_count() == 3);
  CHECK(g.morphism_count() == 18);
  for (std::size_t a = 0; a < 3; ++a)
    for (std::size_t b = 0; b < 3; ++b) CHECK(g.hom(a, b).size() == 2);
  CHECK(g.is_connected());

  auto ind = build_standard_groupoid(cyclic(1), 4);
  CHECK(ind.morphism_count() == 16);
  CHECK(vertex_group(ind, 2).group.order() == 1);
}

TEST_CASE("standard groupoid passes validation", "[groupoid]") {
  for (const auto& [name, grp] : oracle::small_groups()) {
    if (grp.order() > 6) continue;
    INFO(name);
    auto g = build_standard_groupoid(grp, 3);
    auto v = validate_groupoid(g.raw());
    CHECK(v.morphism_count() == 9 * grp.order());
    for (std::size_t a = 0; a < 3; ++a) CHECK(isomorphic(vertex_group(v, a).group, grp));
  }
}

TEST_CASE("composition convention", "[groupoid]") {
  // (a,x,b) then (b,y,c) = (a, y*x, c), visible with a nonabelian group
  auto s3 = symmetric(3);
  auto g = build_standard_groupoid(s3, 2);
  const std::size_t x = 1, y = 3;
  REQUIRE(s3.mul(y, x) != s3.mul(x, y));
  CHECK(g.then(mor(g, 6, 0, x, 1), mor(g, 6, 1, y, 0)) == mor(g, 6, 0, s3.mul(y, x), 0));
  CHECK_FALSE(g.compose(mor(g, 6, 0, x, 1), mor(g, 6, 0, y, 1)).has_value());
  CHECK_FALSE(vertex_group(g, 1).group.is_abelian());
}

TEST_CASE("validate_groupoid rejects broken tables", "[groupoid]") {
  auto good = build_standard_groupoid(cyclic(2), 2).raw();

  SECTION("composability") {
    auto raw = good;
    raw.composition.push_back({2, 2, 2});  // (0,e,1) twice: ter != init
    try {
      validate_groupoid(raw);
      FAIL("expected AxiomViolation");
    } catch (const AxiomViolation& e) {
      CHECK(e.kind() == "composability");
    }
  }
  SECTION("associativity after mutating one entry") {
    auto raw = good;
    // swap the result of one non-identity composite inside Mor(0,1)
    const std::size_t n = 2, k = 2;
    const auto f = standard_morphism(n, k, 0, 1, 0), h = standard_morphism(n, k, 0, 0, 1);
    bool mutated = false;
    for (auto& t : raw.composition)
      if (t[0] == f && t[1] == h) {
        t[2] = standard_morphism(n, k, 0, 0, 1);  // was (0,1,1)
        mutated = true;
      }
    REQUIRE(mutated);
    CHECK_THROWS_AS(validate_groupoid(raw), AxiomViolation);
  }
  SECTION("missing composite") {
    auto raw = good;
    raw.composition.pop_back();
    try {
      validate_groupoid(raw);
      FAIL("expected AxiomViolation");
    } catch (const AxiomViolation& e) {
      CHECK(e.kind() == "totality");
    }
  }
}

TEST_CASE("binding group", "[groupoid]") {
  SECTION("Z/2 on 3 objects") {
    auto g = build_standard_groupoid(cyclic(2), 3);
    auto bg = binding_group(g);
    CHECK(bg.group.order() == 2);
    REQUIRE(bg.classes.size() == 2);
    CHECK(bg.classes[1].size() == 3);
    for (std::size_t o = 0; o < 3; ++o) CHECK(bg.classes[0][o] == g.identity(o));
  }
  SECTION("trivial group") { CHECK(binding_group(build_standard_groupoid(cyclic(1), 5)).group.order() == 1); }
  SECTION("nonabelian vertex") {
    CHECK_THROWS_AS(binding_group(build_standard_groupoid(symmetric(3), 2)), NonAbelianVertex);
  }
  SECTION("action on Z/2, n=2") {
    auto g = build_standard_groupoid(cyclic(2), 2);
    auto bg = binding_group(g);
    CHECK(bind_act(g, bg, 0, mor(g, 2, 0, 0, 1)) == mor(g, 2, 0, 0, 1));
    CHECK(bind_act(g, bg, 1, mor(g, 2, 0, 0, 1)) == mor(g, 2, 0, 1, 1));
  }
  SECTION("left action equals right action and is regular") {
    auto g = build_standard_groupoid(make_standard_group("product:cyclic:2,cyclic:2"), 3);
    auto bg = binding_group(g);
    for (std::size_t a = 0; a < 3; ++a)
      for (std::size_t b = 0; b < 3; ++b)
        for (auto f : g.hom(a, b)) {
          for (std::size_t k = 0; k < bg.classes.size(); ++k)
            CHECK(bind_act(g, bg, k, f) == g.then(bg.classes[k][a], f));
          for (auto h : g.hom(a, b)) {
            std::size_t hits = 0;
            for (std::size_t k = 0; k < bg.classes.size(); ++k) hits += bind_act(g, bg, k, f) == h;
            CHECK(hits == 1);
          }
        }
  }
  SECTION("bracket on Z/4 and the cocycle identity") {
    auto g = build_standard_groupoid(cyclic(4), 2);
    auto bg = binding_group(g);
    CHECK(bracket(g, bg, mor(g, 4, 0, 1, 1), mor(g, 4, 0, 3, 1)) == 2);
    auto g4 = build_standard_groupoid(make_standard_group("product:cyclic:2,cyclic:2"), 2);
    auto b4 = binding_group(g4);
    for (auto f : g4.hom(0, 1))
      for (auto h : g4.hom(0, 1))
        for (auto k : g4.hom(0, 1)) {
          CHECK(bracket(g4, b4, f, f) == b4.group.identity());
          CHECK(b4.group.mul(bracket(g4, b4, f, h), bracket(g4, b4, h, k)) == bracket(g4, b4, f, k));
        }
  }
}
