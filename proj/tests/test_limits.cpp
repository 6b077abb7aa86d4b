#include <catch_amalgamated.hpp>

#include "gpdlab/limits.hpp"
#include "gpdlab/model.hpp"

using namespace gpdlab;

namespace {

std::vector<std::size_t> mod_map(std::size_t from, std::size_t to) {
  std::vector<std::size_t> m(from);
  for (std::size_t x = 0; x < from; ++x) m[x] = x % to;
  return m;
}

RawSystem chain_8_4_2() {
  RawSystem r;
  r.names = {"Z2", "Z4", "Z8"};
  r.groups = {cyclic(2), cyclic(4), cyclic(8)};
  r.order = {{0, 1}, {1, 2}};
  r.transitions[{0, 1}] = mod_map(4, 2);
  r.transitions[{1, 2}] = mod_map(8, 4);
  r.transitions[{0, 2}] = mod_map(8, 2);
  return r;
}

}  // namespace

TEST_CASE("validate_system", "[limits]") {
  SECTION("single group") {
    RawSystem r;
    r.groups = {cyclic(2)};
    CHECK(validate_system(r).size() == 1);
  }
  SECTION("chain") {
    auto sys = validate_system(chain_8_4_2());
    CHECK(sys.leq(0, 2));
    CHECK_FALSE(sys.leq(2, 0));
  }
  SECTION("wrong direction is not onto") {
    RawSystem r;
    r.groups = {cyclic(4), cyclic(2)};
    r.order = {{0, 1}};
    r.transitions[{0, 1}] = {0, 2};
    CHECK_THROWS_AS(validate_system(r), TransitionNotEpi);
  }
  SECTION("non-commuting triangle") {
    auto r = chain_8_4_2();
    r.transitions[{0, 2}] = {0, 0, 0, 0, 0, 0, 0, 0};
    CHECK_THROWS_AS(validate_system(r), TransitionNotEpi);
    r.groups[0] = cyclic(2);
    r.transitions[{0, 2}] = mod_map(8, 2);
    r.transitions[{0, 1}] = {0, 1, 0, 1};
    CHECK_NOTHROW(validate_system(r));
  }
  SECTION("functoriality") {
    // Z/2 x Z/2 onto Z/2 in two different ways through an identity step
    RawSystem r;
    r.groups = {cyclic(2), cyclic(2), direct_product(cyclic(2), cyclic(2))};
    r.order = {{0, 1}, {1, 2}};
    r.transitions[{0, 1}] = {0, 1};
    r.transitions[{1, 2}] = {0, 1, 0, 1};
    r.transitions[{0, 2}] = {0, 0, 1, 1};
    CHECK_THROWS_AS(validate_system(r), FunctorialityFailure);
  }
  SECTION("not directed") {
    RawSystem r;
    r.groups = {cyclic(2), cyclic(3)};
    CHECK_THROWS_AS(validate_system(r), NotDirected);
  }
}

TEST_CASE("inverse limit stages", "[limits]") {
  SECTION("chain gives the top") {
    auto sys = validate_system(chain_8_4_2());
    CHECK(isomorphic(inverse_limit_stage(sys, {0, 1, 2}), cyclic(8)));
    CHECK(isomorphic(inverse_limit_stage(sys, {0, 1}), cyclic(4)));
    CHECK_THROWS_AS(inverse_limit_stage(sys, {1, 2}), InputError);
  }
  SECTION("constant system") {
    RawSystem r;
    r.groups = {symmetric(3), symmetric(3)};
    r.order = {{0, 1}};
    r.transitions[{0, 1}] = {0, 1, 2, 3, 4, 5};
    CHECK(isomorphic(inverse_limit_stage(validate_system(r), {0, 1}), symmetric(3)));
  }
  SECTION("two incomparable indices under Z/6") {
    RawSystem r;
    r.groups = {cyclic(2), cyclic(3), cyclic(6)};
    r.order = {{0, 2}, {1, 2}};
    r.transitions[{0, 2}] = mod_map(6, 2);
    r.transitions[{1, 2}] = mod_map(6, 3);
    auto sys = validate_system(r);
    CHECK(isomorphic(inverse_limit_stage(sys, {0, 1, 2}), cyclic(6)));
    CHECK(inverse_limit_stage(sys, {0, 1}).order() == 6);
  }
}

TEST_CASE("restriction epimorphism", "[limits]") {
  SECTION("double cover onto the plain morphism") {
    auto m = standard_model(cyclic(2), 4, true);
    const auto mor = m.groupoid().hom(0, 1).front();
    const Tuple plain{m.object_id(0), m.object_id(1), m.morphism_id(mor)};
    auto r = restriction_epimorphism(m.structure(), m.base(0), m.base(0), plain, m.morphism_tuple(mor));
    CHECK(r.from.order() == 4);
    CHECK(r.to.order() == 2);
    CHECK(r.surjective());
    CHECK(r.kernel_order() == 2);
  }
  SECTION("identity when f = f'") {
    auto m = standard_model(cyclic(3), 3, false);
    const auto t = m.morphism_tuple(m.groupoid().hom(0, 1).front());
    auto r = restriction_epimorphism(m.structure(), m.base(0), m.base(0), t, t);
    CHECK(r.kernel_order() == 1);
    CHECK(r.surjective());
  }
}

#include "gpdlab/pi2.hpp"

namespace {

const ClaimResult& claim(const std::vector<ClaimResult>& r, const std::string& id) {
  for (const auto& c : r)
    if (c.id == id) return c;
  throw std::runtime_error("missing " + id);
}

}  // namespace

TEST_CASE("stages on the standard instances", "[limits]") {
  SECTION("plain Z/2: G = Pi = F = Z/2") {
    auto d = compute_stages(standard_model(cyclic(2), 4, false), 0, 1,
                            default_family(standard_model(cyclic(2), 4, false), 0, 1));
    REQUIRE(d.stages.size() == 1);
    CHECK(d.stages[0].g.order() == 2);
    CHECK(d.stages[0].pi.order() == 2);
    CHECK(d.stages[0].f.order() == 2);
  }
  SECTION("double cover Z/2: G order 2 in Pi = F order 4") {
    auto m = standard_model(cyclic(2), 4, true);
    auto d = compute_stages(m, 0, 1, default_family(m, 0, 1));
    REQUIRE(d.stages.size() == 2);
    CHECK(d.stages[1].g.order() == 2);
    CHECK(d.stages[1].pi.order() == 4);
    CHECK(d.stages[1].f.order() == 4);
    CHECK(d.maps.at({0, 1}).kernel_order() == 2);
  }
  SECTION("suites") {
    for (bool cover : {false, true})
      for (const auto& g : {cyclic(1), cyclic(2), cyclic(3), symmetric(3)}) {
        auto r = verify_limits(standard_model(g, 4, cover));
        for (const auto& c : r) {
          INFO(c.id << " " << (c.witness ? c.witness->dump() : "") << " cover=" << cover << " |G|=" << g.order());
          CHECK(c.status != Status::fail);
        }
      }
    auto r = verify_limits(standard_model(cyclic(2), 4, true));
    CHECK(claim(r, "stage-limits").details["pi order"] == 4);
    CHECK(claim(r, "stage-limits").details["gamma order"] == 2);
  }
}

TEST_CASE("stages are skipped below four objects", "[limits]") {
  const auto r = verify_limits(standard_model(cyclic(1), 3, true));
  CHECK(claim(r, "chain-limit").status == Status::pass);
  CHECK(claim(r, "constant-limit").status == Status::pass);
  CHECK(claim(r, "stage-systems-valid").status == Status::skipped);
  CHECK(claim(r, "stage-limits").reason == "stages need at least 4 objects");
  CHECK(r.size() == 9);
}
