#include <catch_amalgamated.hpp>

#include <set>

#include "gpdlab/automorphism.hpp"
#include "oracles.hpp"

using namespace gpdlab;

namespace {

struct Plain {
  FiniteGroup grp;
  std::size_t n;
  MultiSortedStructure s;

  Plain(FiniteGroup g, std::size_t objects)
      : grp(std::move(g)), n(objects), s(encode_groupoid(build_standard_groupoid(grp, objects))) {}

  ElementId obj(std::size_t o) const { return static_cast<ElementId>(o); }
  ElementId mor(std::size_t a, std::size_t x, std::size_t b) const {
    return static_cast<ElementId>(n + standard_morphism(n, grp.order(), a, x, b));
  }
  std::vector<ElementId> loops(std::size_t a) const {
    std::vector<ElementId> out;
    for (std::size_t x = 0; x < grp.order(); ++x) out.push_back(mor(a, x, a));
    return out;
  }
  std::vector<ElementId> objects_and_loops(std::size_t a) const {
    std::vector<ElementId> out;
    for (std::size_t o = 0; o < n; ++o) out.push_back(obj(o));
    auto l = loops(a);
    out.insert(out.end(), l.begin(), l.end());
    return out;
  }
  std::vector<ElementId> base(std::size_t a) const {
    auto out = loops(a);
    out.push_back(obj(a));
    return out;
  }
};

std::vector<ElementId> all_elements(const MultiSortedStructure& s) {
  std::vector<ElementId> v(s.carrier_size());
  for (ElementId x = 0; x < v.size(); ++x) v[x] = x;
  return v;
}

}  // namespace

TEST_CASE("automorphism_group basics", "[aut]") {
  Plain p(cyclic(2), 2);
  CHECK(automorphism_group(p.s, all_elements(p.s)).order() == 1);

  SECTION("members are automorphisms, fix the base, form a group") {
    auto g = automorphism_group(p.s, p.base(0));
    std::set<Automorphism> members(g.members.begin(), g.members.end());
    CHECK(members.size() == g.order());
    for (const auto& a : g.members) {
      CHECK(is_automorphism(p.s, a));
      for (auto b : p.base(0)) CHECK(a[b] == b);
      for (const auto& b : g.members) {
        Automorphism ab(a.size());
        for (std::size_t x = 0; x < a.size(); ++x) ab[x] = a[b[x]];
        CHECK(members.count(ab));
      }
    }
    CHECK(std::is_sorted(g.members.begin(), g.members.end()));
  }
  SECTION("agrees with brute force") {
    CHECK(automorphism_group(p.s, {}).order() == oracle::count_automorphisms_brute_force(p.s, {}));
    CHECK(automorphism_group(p.s, p.base(0)).order() == oracle::count_automorphisms_brute_force(p.s, p.base(0)));
    auto ind = encode_double_cover(build_standard_groupoid(cyclic(1), 2));
    CHECK(automorphism_group(ind, {}).order() == oracle::count_automorphisms_brute_force(ind, {}));
  }
  SECTION("a relational structure: the 5-cycle") {
    Relation edges{"adj", {0, 0}, {}};
    for (std::size_t i = 0; i < 5; ++i) {
      edges.tuples.push_back({i, (i + 1) % 5});
      edges.tuples.push_back({(i + 1) % 5, i});
    }
    MultiSortedStructure c5({{"V", 5}}, {}, {edges});
    CHECK(automorphism_group(c5, {}).order() == 10);
    CHECK(automorphism_group(c5, std::vector<ElementId>{0}).order() == 2);
    CHECK(automorphism_group(c5, std::vector<ElementId>{0, 1}).order() == 1);
  }
}

TEST_CASE("pointwise stabilizer of objects and one vertex group", "[aut][oracle]") {
  for (auto [grp, n] : {std::pair{cyclic(2), std::size_t{3}}, std::pair{symmetric(3), std::size_t{3}},
                        std::pair{cyclic(2), std::size_t{2}}, std::pair{symmetric(3), std::size_t{2}}}) {
    Plain p(grp, n);
    auto g = automorphism_group(p.s, p.objects_and_loops(0));
    auto maps = oracle::choice_family_maps(grp, n, 0);
    std::sort(maps.begin(), maps.end());
    maps.erase(std::unique(maps.begin(), maps.end()), maps.end());
    CHECK(g.members == maps);
  }
  CHECK(automorphism_group(Plain(cyclic(2), 3).s, Plain(cyclic(2), 3).objects_and_loops(0)).order() == 4);
  CHECK(automorphism_group(Plain(symmetric(3), 3).s, Plain(symmetric(3), 3).objects_and_loops(0)).order() == 36);
}

TEST_CASE("orbits", "[aut]") {
  SECTION("base elements are fixed") {
    Plain p(cyclic(2), 2);
    CHECK(orbit_of(p.s, p.base(0), {p.obj(0)}) == std::vector<Tuple>{{p.obj(0)}});
  }
  SECTION("orbit over both endpoints has size |Z(G)|") {
    for (const auto& [name, grp] : oracle::small_groups()) {
      INFO(name);
      Plain p(grp, 2);
      auto base = p.base(0);
      auto b1 = p.base(1);
      base.insert(base.end(), b1.begin(), b1.end());
      CHECK(orbit_of(p.s, base, {p.mor(0, 0, 1)}).size() == oracle::center_by_conjugation(grp).size());
    }
  }
  SECTION("orbits partition") {
    Plain p(cyclic(3), 2);
    std::set<Tuple> seen;
    std::size_t total = 0;
    for (ElementId x = 0; x < p.s.carrier_size(); ++x) {
      auto o = orbit_of(p.s, p.base(0), {x});
      if (seen.count(o.front())) continue;
      for (const auto& t : o) CHECK(seen.insert(t).second);
      total += o.size();
    }
    CHECK(total == p.s.carrier_size());
  }
}

TEST_CASE("dcl surrogate", "[aut]") {
  Plain p(cyclic(2), 3);
  CHECK(dcl_of(p.s, all_elements(p.s)) == all_elements(p.s));
  CHECK(dcl_of(p.s, {}).empty());

  const auto f = p.mor(0, 0, 1);
  const ElementId fb[] = {f};
  auto d = dcl_of(p.s, fb);
  auto has = [&](ElementId x) { return std::binary_search(d.begin(), d.end(), x); };
  CHECK(has(p.obj(0)));
  CHECK(has(p.obj(1)));
  CHECK(has(p.obj(2)));  // the only remaining object
  for (std::size_t x = 0; x < 2; ++x) {
    CHECK(has(p.mor(0, x, 1)));
    CHECK(has(p.mor(0, x, 0)));
    CHECK(has(p.mor(1, x, 1)));
  }

  SECTION("closure operator") {
    for (auto base : {std::vector<ElementId>{}, std::vector<ElementId>{f}, p.base(0), p.base(2)}) {
      auto c = dcl_of(p.s, base);
      for (auto b : base) CHECK(std::binary_search(c.begin(), c.end(), b));
      CHECK(dcl_of(p.s, c) == c);
      auto bigger = base;
      bigger.push_back(p.mor(1, 1, 2));
      auto cb = dcl_of(p.s, bigger);
      CHECK(std::includes(cb.begin(), cb.end(), c.begin(), c.end()));
    }
  }
}

TEST_CASE("interdefinability", "[aut]") {
  Plain p2(cyclic(2), 2);
  CHECK(interdefinable(p2.s, p2.base(0), {p2.mor(0, 0, 1)}, {p2.mor(0, 0, 1)}));
  CHECK(interdefinable(p2.s, p2.base(0), {p2.mor(0, 0, 1)}, {p2.mor(0, 1, 1)}));

  Plain p3(cyclic(2), 3);
  CHECK_FALSE(interdefinable(p3.s, p3.base(0), {p3.mor(0, 0, 1)}, {p3.mor(0, 0, 2)}));
  // the witness: an automorphism fixing base(0) and f but moving g
  auto base = p3.base(0);
  base.push_back(p3.mor(0, 0, 1));
  auto a = find_automorphism(p3.s, base, std::vector<MapPair>{{p3.obj(2), p3.obj(2)}});
  REQUIRE(a);
  CHECK_FALSE(determined_by(p3.s, p3.base(0), {p3.mor(0, 0, 1)}, {p3.mor(0, 0, 2)}));
}

TEST_CASE("restricted groups", "[aut]") {
  SECTION("domain inside the base") {
    Plain p(cyclic(2), 2);
    auto r = restricted_group(p.s, p.base(0), {{p.obj(0)}});
    CHECK(r.order() == 1);
  }
  SECTION("Mor(a,b) over base(a) is G") {
    for (const auto& [name, grp] : oracle::small_groups()) {
      INFO(name);
      Plain p(grp, 2);
      std::vector<Tuple> dom;
      for (std::size_t x = 0; x < grp.order(); ++x) dom.push_back({p.mor(0, x, 1)});
      auto r = restricted_group(p.s, p.base(0), dom, Restriction::stabilizer);
      CHECK(isomorphic(r.group(), grp));
      CHECK(r.action.is_valid());
      CHECK(r.action.is_regular());
    }
  }
  SECTION("orbit over both endpoints of D4 gives Z(D4)") {
    Plain p(dihedral(4), 2);
    auto base = p.base(0);
    auto b1 = p.base(1);
    base.insert(base.end(), b1.begin(), b1.end());
    auto x = orbit_of(p.s, base, {p.mor(0, 0, 1)});
    auto r = restricted_group(p.s, base, x);
    CHECK(r.order() == 2);
    for (std::size_t k = 0; k < r.order(); ++k) CHECK(is_automorphism(p.s, r.witness[k]));
  }
  SECTION("non-invariant domain") {
    Plain p(cyclic(2), 3);
    CHECK_THROWS_AS(restricted_group(p.s, p.base(0), {{p.mor(0, 0, 1)}}), NotInvariant);
    auto r = restricted_group(p.s, p.base(0), {{p.mor(0, 0, 1)}}, Restriction::stabilizer);
    CHECK(r.order() == 1);
  }
  SECTION("order divides the full stabilizer") {
    Plain p(cyclic(3), 3);
    std::vector<Tuple> dom;
    for (std::size_t b = 0; b < 3; ++b)
      for (std::size_t x = 0; x < 3; ++x) dom.push_back({p.mor(0, x, b)});
    auto r = restricted_group(p.s, p.base(0), dom);
    CHECK(automorphism_group(p.s, p.base(0)).order() % r.order() == 0);
  }
}

TEST_CASE("search budget", "[aut]") {
  Plain p(cyclic(4), 8);  // 8 + 256 elements
  SearchBudget tight{100, 2'000'000};
  try {
    automorphism_group(p.s, {}, tight);
    FAIL("expected BudgetExceeded");
  } catch (const BudgetExceeded& e) {
    CHECK(e.size() == p.s.carrier_size());
  }
  SearchBudget few{300, 3};
  CHECK_THROWS_AS(automorphism_group(Plain(cyclic(2), 3).s, {}, few), BudgetExceeded);
}

TEST_CASE("enumeration is deterministic", "[aut]") {
  Plain p(cyclic(3), 3);
  CHECK(automorphism_group(p.s, {}).members == automorphism_group(p.s, {}).members);
  // object permutations x Aut(Z/3) x one loop choice per non-base object
  CHECK(automorphism_group(p.s, {}).order() == 6 * 2 * 3 * 3);
}
