#include <catch_amalgamated.hpp>

#include <set>

#include "gpdlab/extended.hpp"
#include "oracles.hpp"

using namespace gpdlab;

TEST_CASE("Y-set sizes", "[extended]") {
  SECTION("plain: Y is Mor(a,b)") {
    auto m = standard_model(cyclic(2), 3, false);
    auto p = pair_groups(m, 0, 1);
    CHECK(p.y.size() == 2);
    CHECK(p.y.members == m.hom_tuples(0, 1));
  }
  SECTION("cover: the target fiber swap doubles Y") {
    auto m = standard_model(cyclic(2), 3, true);
    auto p = pair_groups(m, 0, 1);
    CHECK(p.y.size() == 4);
    REQUIRE(p.y.members.front().size() == 7);
    std::set<std::pair<ElementId, ElementId>> fibers;
    for (const auto& t : p.y.members) {
      CHECK(Tuple(t.begin(), t.begin() + 3) == m.object_tuple(0));
      fibers.insert({t[3], t[4]});
    }
    CHECK(fibers.size() == 2);
  }
  SECTION("cover over the trivial group") {
    auto m = standard_model(cyclic(1), 3, true);
    CHECK(pair_groups(m, 0, 1).y.size() == 2);
  }
  SECTION("independent of the reference") {
    auto m = standard_model(cyclic(2), 3, true);
    auto p = pair_groups(m, 0, 1);
    for (auto mor : m.groupoid().hom(0, 1)) {
      auto y = compute_y_set(m.structure(), m.base(0), m.morphism_tuple(mor));
      CHECK(y.members == p.y.members);
    }
  }
}

TEST_CASE("F and G on a pair", "[extended]") {
  SECTION("plain Z/2: F = G = Z/2") {
    auto p = pair_groups(standard_model(cyclic(2), 3, false), 0, 1);
    CHECK(isomorphic(p.f.group(), cyclic(2)));
    CHECK(p.g.order() == 2);
  }
  SECTION("cover Z/2: |F| = 4 abelian") {
    auto p = pair_groups(standard_model(cyclic(2), 3, true), 0, 1);
    CHECK(p.order() == 4);
    CHECK(p.f.group().is_abelian());
    CHECK(p.g.order() == 2);
    CHECK(centralizes(p.g, center(p.f.group())));
  }
  SECTION("cover Z/3: G proper in Z(F) = F of order 6") {
    auto p = pair_groups(standard_model(cyclic(3), 3, true), 0, 1);
    CHECK(p.order() == 6);
    CHECK(p.f.group().is_abelian());
    CHECK(p.g.order() == 3);
    CHECK(center(p.f.group()).order() == 6);
  }
}

TEST_CASE("composition on Y-sets", "[extended]") {
  auto m = standard_model(cyclic(2), 4, true);
  ExtendedConstruction ec(m);
  CHECK(ec.y_size() == 4);

  SECTION("extends groupoid composition") {
    const auto& gpd = m.groupoid();
    for (auto f : gpd.hom(0, 1))
      for (auto h : gpd.hom(1, 2)) {
        const auto g_idx = ec.pair(0, 1).y.index_of(m.morphism_tuple(f));
        const auto h_idx = ec.pair(1, 2).y.index_of(m.morphism_tuple(h));
        CHECK(ec.compose(0, 1, 2, h_idx, g_idx) == ec.pair(0, 2).y.index_of(m.morphism_tuple(gpd.then(f, h))));
      }
  }
  SECTION("every decomposition agrees and divisors are unique") {
    for (std::size_t a = 0; a < 4; ++a)
      for (std::size_t b = 0; b < 4; ++b)
        for (std::size_t c = 0; c < 4; ++c) {
          if (a == b || b == c || a == c) continue;
          for (std::size_t g = 0; g < 4; ++g)
            for (std::size_t f = 0; f < 4; ++f) {
              std::size_t hits = 0;
              for (std::size_t h = 0; h < 4; ++h) hits += ec.compose(a, b, c, h, g) == f;
              CHECK(hits == 1);
            }
        }
  }
}

TEST_CASE("paths", "[extended]") {
  auto m = standard_model(cyclic(2), 5, true);
  ExtendedConstruction ec(m);
  DirectedPath q{{0, 1, 2}, {1, 3}};
  CHECK(ec.equivalent(q, q));
  auto r = ec.reduce(q);
  CHECK(r.length() == 2);
  CHECK(ec.equivalent(q, r));
  CHECK(ec.reduce(r) == r);
  DirectedPath one{{0, 1}, {2}};
  CHECK(ec.equivalent(one, ec.reduce(one)));
}

TEST_CASE("extended groupoid", "[extended]") {
  SECTION("plain Z/2") {
    auto m = standard_model(cyclic(2), 4, false);
    ExtendedConstruction ec(m);
    auto eg = build_extended_groupoid(ec);
    CHECK(eg.groupoid.hom(0, 1).size() == 2);
    CHECK(isomorphic(vertex_group(eg.groupoid, 0).group, cyclic(2)));
  }
  SECTION("cover Z/2") {
    auto m = standard_model(cyclic(2), 4, true);
    ExtendedConstruction ec(m);
    auto eg = build_extended_groupoid(ec);
    auto v = vertex_group(eg.groupoid, 0);
    CHECK(v.group.order() == 4);
    CHECK(isomorphic(v.group, ec.pair(0, 1).f.group()));
    const auto& gpd = m.groupoid();
    for (std::size_t f = 0; f < gpd.morphism_count(); ++f)
      for (std::size_t c = 0; c < 4; ++c)
        for (auto h : gpd.hom(gpd.ter(f), c))
          CHECK(inject(ec, eg, gpd.then(f, h)) == eg.groupoid.then(inject(ec, eg, f), inject(ec, eg, h)));
  }
}

namespace {

/// The F element acting on Y(a,b) as binding class k does on Mor(a,b).
std::size_t binding_element(const ExtendedConstruction& ec, std::size_t a, std::size_t b, std::size_t k) {
  const auto& p = ec.pair(a, b);
  const auto& m = ec.model();
  const auto f = m.morphism_of(p.y.members[p.x[0]]);
  const auto to = p.y.index_of(m.morphism_tuple(bind_act(m.groupoid(), ec.binding(), k, f)));
  return p.carrying(p.x[0], to);
}

}  // namespace

TEST_CASE("transport does not depend on the carrying automorphism", "[extended]") {
  auto m = standard_model(cyclic(3), 4, true);
  ExtendedConstruction ec(m);
  CHECK(ec.all_transports(0, 1, 2, 3).size() == 1);
  CHECK(ec.all_transports(0, 1, 1, 0).size() == 1);
  CHECK(ec.all_transports(0, 1, 2, 3).front() == ec.transport(0, 1, 2, 3));
}

TEST_CASE("binding elements moved between steps", "[extended]") {
  auto m = standard_model(cyclic(2), 5, true);
  ExtendedConstruction ec(m);
  const DirectedPath q{{0, 1, 2}, {1, 2}};
  const auto s01 = binding_element(ec, 0, 1, 1);
  const auto s12 = binding_element(ec, 1, 2, 1);  // sigma is its own inverse in Z/2
  DirectedPath moved = q, once = q;
  moved.steps[0] = ec.pair(0, 1).act(s01, q.steps[0]);
  moved.steps[1] = ec.pair(1, 2).act(s12, q.steps[1]);
  once.steps[0] = moved.steps[0];
  CHECK(ec.equivalent(q, moved));
  CHECK_FALSE(ec.equivalent(q, once));
}

TEST_CASE("4-step paths through distinct objects reduce", "[extended][slow]") {
  auto m = standard_model(cyclic(2), 6, true);
  ExtendedConstruction ec(m);
  const std::vector<std::size_t> objs{0, 1, 2, 3, 4};
  std::size_t checked = 0;
  for (std::size_t s = 0; s < 256; ++s) {
    DirectedPath q{objs, {s % 4, (s / 4) % 4, (s / 16) % 4, (s / 64) % 4}};
    auto r = ec.reduce(q);
    CHECK(r.length() == 2);
    CHECK(ec.equivalent(q, r));
    ++checked;
  }
  CHECK(checked == 256);
}
