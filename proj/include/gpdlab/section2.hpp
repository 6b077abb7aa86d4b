#pragma once

// Checks on the encoded groupoid itself: which translates of a fixed
// morphism stay in its orbit over both endpoints, the groups those orbits
// carry, and the automorphisms coming from choice families.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "gpdlab/automorphism.hpp"
#include "gpdlab/group.hpp"
#include "gpdlab/model.hpp"
#include "gpdlab/report.hpp"

namespace gpdlab {

/// The structure automorphism induced by a choice of loops at `a`, one per
/// object (`choice[a]` is ignored and taken as the identity). Objects and
/// fibers stay put; f : u -> v goes to r_u^-1 c_u^-1 (r_u f r_v^-1) c_v r_v
/// (read left to right) where r_u is the first morphism a -> u.
inline Automorphism choice_family_automorphism(const GroupoidModel& m, std::size_t a,
                                               const std::vector<std::size_t>& choice) {
  const auto& gpd = m.groupoid();
  const std::size_t n = m.objects();
  if (choice.size() != n) throw InputError("one choice per object expected");
  std::vector<std::size_t> r(n), c(n);
  for (std::size_t u = 0; u < n; ++u) {
    r[u] = u == a ? gpd.identity(a) : gpd.hom(a, u).front();
    c[u] = u == a ? gpd.identity(a) : choice[u];
    if (gpd.init(c[u]) != a || gpd.ter(c[u]) != a) throw InputError("choices must be loops at the base object");
  }
  Automorphism out(m.structure().carrier_size());
  for (ElementId x = 0; x < out.size(); ++x) out[x] = x;
  for (std::size_t f = 0; f < gpd.morphism_count(); ++f) {
    const auto u = gpd.init(f), v = gpd.ter(f);
    const auto loop = gpd.then(gpd.then(r[u], f), gpd.inverse(r[v]));
    const auto moved = gpd.then(gpd.then(gpd.inverse(c[u]), loop), c[v]);
    const auto img = gpd.then(gpd.then(gpd.inverse(r[u]), moved), r[v]);
    out[m.morphism_id(f)] = m.morphism_id(img);
  }
  return out;
}

/// All |G_a|^(n-1) choice-family automorphisms, sorted.
inline std::vector<Automorphism> choice_family_automorphisms(const GroupoidModel& m, std::size_t a) {
  const auto& loops = m.groupoid().hom(a, a);
  const std::size_t n = m.objects();
  std::vector<std::size_t> pos(n, 0);
  std::vector<Automorphism> out;
  for (;;) {
    std::vector<std::size_t> choice(n);
    for (std::size_t u = 0; u < n; ++u) choice[u] = loops[pos[u]];
    out.push_back(choice_family_automorphism(m, a, choice));
    std::size_t u = 0;
    for (; u < n; ++u) {
      if (u == a) continue;
      if (++pos[u] < loops.size()) break;
      pos[u] = 0;
    }
    if (u == n) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline constexpr const char* kSection2Suite = "section2";

/// Objects a = 0 and b = 1; the reference morphism is the first of Mor(a,b).
inline std::vector<ClaimResult> verify_section2(const GroupoidModel& m, SearchBudget budget = {}) {
  const auto& s = m.structure();
  const auto& gpd = m.groupoid();
  if (m.objects() < 2) throw InputError("section2 needs at least 2 objects");
  const std::size_t a = 0, b = 1;
  const auto vg = vertex_group(gpd, a);
  const auto z = center(vg.group);
  const auto zg = subgroup_as_group(z);
  const auto f0 = gpd.hom(a, b).front();
  const auto base_ab = m.base(a, b);
  std::vector<ClaimResult> out;

  std::vector<Tuple> x_orbit;
  out.push_back(run_claim("x-is-central-translates", kSection2Suite,
                          "a translate f0.x stays in the orbit over both endpoints iff x is central",
                          [&](ClaimResult& c) {
    c.surrogates.push_back("closure of an object replaced by the object and its vertex group");
    x_orbit = orbit_of(s, base_ab, m.morphism_tuple(f0), budget);
    for (std::size_t k = 0; k < vg.members.size(); ++k) {
      const auto x = vg.members[k];
      const auto t = m.morphism_tuple(gpd.then(x, f0));  // f0 after x
      const bool in_x = std::binary_search(x_orbit.begin(), x_orbit.end(), t);
      if (in_x != z.contains(k)) {
        c.status = Status::fail;
        c.witness = json{{"x", s.describe(m.morphism_id(x))}, {"in orbit", in_x}, {"central", z.contains(k)}};
        return;
      }
    }
    c.details["orbit size"] = x_orbit.size();
    c.details["center order"] = z.order();
  }));

  out.push_back(run_claim("gamma2-is-center", kSection2Suite,
                          "automorphisms over both endpoints act on the orbit as the center of G",
                          [&](ClaimResult& c) {
    if (x_orbit.empty()) x_orbit = orbit_of(s, base_ab, m.morphism_tuple(f0), budget);
    const auto r = restricted_group(s, base_ab, x_orbit, Restriction::strict, budget);
    c.details["order"] = r.order();
    if (!isomorphic(r.group(), zg)) {
      c.status = Status::fail;
      c.witness = json{{"restricted order", r.order()}, {"center order", zg.order()}};
    }
  }));

  std::optional<RestrictedGroup> hom_group;
  out.push_back(run_claim("hom-automorphisms-are-g", kSection2Suite,
                          "automorphisms over the source act on Mor(a,b) as G", [&](ClaimResult& c) {
    c.surrogates.push_back("only automorphisms mapping Mor(a,b) onto itself are restricted");
    hom_group = restricted_group(s, m.base(a), m.hom_tuples(a, b), Restriction::stabilizer, budget);
    c.details["order"] = hom_group->order();
    if (!isomorphic(hom_group->group(), vg.group)) {
      c.status = Status::fail;
      c.witness = json{{"restricted order", hom_group->order()}, {"group order", vg.group.order()}};
    }
  }));

  out.push_back(run_claim("hom-automorphisms-center", kSection2Suite,
                          "the center of the automorphisms of Mor(a,b) over the source is Z(G)",
                          [&](ClaimResult& c) {
    if (!hom_group) throw ClaimFailure("hom-automorphisms-center", "restricted group unavailable");
    const auto zc = subgroup_as_group(center(hom_group->group()));
    c.details["order"] = zc.order();
    if (!isomorphic(zc, zg)) {
      c.status = Status::fail;
      c.witness = json{{"center order", zc.order()}, {"expected", zg.order()}};
    }
  }));

  out.push_back(run_claim("choice-family-automorphisms", kSection2Suite,
                          "choice families of loops give exactly the automorphisms fixing objects and G_a",
                          [&](ClaimResult& c) {
    const auto maps = choice_family_automorphisms(m, a);
    for (const auto& mp : maps) {
      std::string why;
      if (!is_automorphism(s, mp, &why)) {
        c.status = Status::fail;
        c.witness = json{{"reason", why}};
        return;
      }
    }
    std::vector<ElementId> base = m.loops(a);
    for (std::size_t o = 0; o < m.objects(); ++o) {
      const auto t = m.object_tuple(o);
      base.insert(base.end(), t.begin(), t.end());
    }
    const auto stab = automorphism_group(s, base, budget);
    std::size_t expected = 1;
    for (std::size_t u = 1; u < m.objects(); ++u) expected *= vg.group.order();
    c.details["maps"] = maps.size();
    c.details["stabilizer order"] = stab.order();
    if (stab.order() != expected || stab.members != maps) {
      c.status = Status::fail;
      c.witness = json{{"stabilizer order", stab.order()}, {"expected", expected}, {"maps", maps.size()}};
    }
  }));
  return out;
}

}  // namespace gpdlab
