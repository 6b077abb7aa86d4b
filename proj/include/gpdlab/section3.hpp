#pragma once

// Checks on the Y-set layer: regularity, centrality of G in F, the uniform
// action of loops, composites landing in Y, and transport between pairs.

#include <cstddef>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "gpdlab/extended.hpp"
#include "gpdlab/report.hpp"
#include "gpdlab/yset.hpp"

namespace gpdlab {

inline constexpr const char* kSection3Suite = "section3";

namespace detail {

inline bool vertex_groups_abelian(const FiniteGroupoid& gpd) {
  for (std::size_t o = 0; o < gpd.object_count(); ++o)
    if (!vertex_group(gpd, o).group.is_abelian()) return false;
  return true;
}

}  // namespace detail

/// Pair groups for every ordered pair, and the extended construction when
/// the vertex groups are abelian. Shared by the section3 and fgroupoid suites.
struct PairLayer {
  std::size_t n = 0;
  std::vector<std::unique_ptr<PairGroups>> pairs;
  std::unique_ptr<ExtendedConstruction> ec;

  const PairGroups& pair(std::size_t a, std::size_t b) const { return ec ? ec->pair(a, b) : *pairs[a * n + b]; }
};

inline PairLayer build_pair_layer(const GroupoidModel& m, SearchBudget budget = {}) {
  PairLayer l;
  l.n = m.objects();
  if (detail::vertex_groups_abelian(m.groupoid())) {
    l.ec = std::make_unique<ExtendedConstruction>(m, budget);
    return l;
  }
  l.pairs.resize(l.n * l.n);
  for (std::size_t a = 0; a < l.n; ++a)
    for (std::size_t b = 0; b < l.n; ++b)
      if (a != b) l.pairs[a * l.n + b] = std::make_unique<PairGroups>(pair_groups(m, a, b, budget));
  return l;
}

inline std::vector<ClaimResult> verify_section3(const GroupoidModel& m, SearchBudget budget = {}) {
  const auto& s = m.structure();
  const auto& gpd = m.groupoid();
  const std::size_t n = m.objects();
  if (n < 3) throw InputError("section3 needs at least 3 objects");
  std::vector<ClaimResult> out;
  PairLayer layer;
  bool have_layer = false;

  out.push_back(run_claim("y-sets-regular", kSection3Suite,
                          "Y contains the orbit of the reference morphism and F acts regularly on it",
                          [&](ClaimResult& c) {
    c.surrogates.push_back("closure of an object replaced by the object and its vertex group");
    layer = build_pair_layer(m, budget);
    have_layer = true;
    const auto& p = layer.pair(0, 1);
    c.details["y size"] = p.y.size();
    c.details["f order"] = p.order();
    c.details["g order"] = p.g.order();
  }));
  const auto skip_all = [&](std::initializer_list<const char*> ids, const char* why) {
    for (const char* id : ids) out.push_back(skipped_claim(id, kSection3Suite, "", why));
  };
  if (!have_layer) {
    skip_all({"uniform-action", "g-central-in-f", "composite-in-y", "transport-independent", "noncentral-example"},
             "pair groups unavailable");
    return out;
  }

  out.push_back(run_claim("uniform-action", kSection3Suite,
                          "a central loop at b0 acts on all morphisms out of (and into) b0 by one automorphism",
                          [&](ClaimResult& c) {
    const std::size_t b0 = 0;
    const auto vg = vertex_group(gpd, b0);
    const auto z = center(vg.group);
    std::vector<ElementId> base;
    for (std::size_t o = 0; o < n; ++o) base = GroupoidModel::join(std::move(base), m.base(o));
    std::size_t checked = 0;
    for (auto k : z.members) {
      const auto sigma = vg.members[k];
      std::vector<MapPair> out_pres, in_pres;
      for (std::size_t o = 0; o < n; ++o) {
        if (o == b0) continue;
        const auto g = gpd.hom(b0, o).front();
        const auto h = gpd.hom(o, b0).front();
        auto p1 = tuple_map(m.morphism_tuple(g), m.morphism_tuple(gpd.then(sigma, g)));
        auto p2 = tuple_map(m.morphism_tuple(h), m.morphism_tuple(gpd.then(h, sigma)));
        out_pres.insert(out_pres.end(), p1.begin(), p1.end());
        in_pres.insert(in_pres.end(), p2.begin(), p2.end());
      }
      for (const auto* pres : {&out_pres, &in_pres})
        if (!find_automorphism(s, base, *pres, budget)) {
          c.status = Status::fail;
          c.witness = json{{"loop", s.describe(m.morphism_id(sigma))},
                           {"clause", pres == &out_pres ? "outgoing" : "incoming"}};
          return;
        }
      ++checked;
    }
    c.details["loops"] = checked;
    c.surrogates.push_back("loops restricted to the center of the vertex group");
  }));

  out.push_back(run_claim("g-central-in-f", kSection3Suite, "G_ab lies in the center of F_ab",
                          [&](ClaimResult& c) {
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        if (a == b) continue;
        const auto& p = layer.pair(a, b);
        const auto& F = p.f.group();
        for (auto g : p.g.members)
          for (std::size_t x = 0; x < F.order(); ++x)
            if (!F.commute(g, x)) {
              c.status = Status::fail;
              c.witness = json{{"pair", {a, b}}, {"g", g}, {"f", x}};
              return;
            }
      }
    c.details["pairs"] = n * (n - 1);
  }));

  out.push_back(run_claim("composite-in-y", kSection3Suite,
                          "for g in X(c,a) and f in Y(a,b) the composite f.g lies in Y(c,b)",
                          [&](ClaimResult& c) {
    const std::size_t a = 0, b = 1, cc = 2;
    const auto& ab = layer.pair(a, b);
    const auto& cb = layer.pair(cc, b);
    const auto& ca = layer.pair(cc, a);
    const auto fab = m.morphism_of(ab.y.members[ab.x[0]]);
    const auto base = m.pair_closure(cc, a);
    std::size_t checked = 0;
    for (std::size_t gi = 0; gi < ca.x.size(); ++gi) {
      const auto g = m.morphism_of(ca.y.members[ca.x[gi]]);
      const auto h0 = m.morphism_tuple(gpd.then(g, fab));
      for (std::size_t fi = 0; fi < ab.y.size(); ++fi) {
        AutomorphismSearch search(s, base, budget);
        std::set<Tuple> images;
        search.run(tuple_map(m.morphism_tuple(fab), ab.y.members[fi]), h0, [&](const Automorphism& mu) {
          images.insert(image_of(mu, h0));
          return true;
        });
        const bool ok = images.size() == 1 && cb.y.contains(*images.begin());
        if (ok && layer.ec && cb.y.index_of(*images.begin()) != layer.ec->compose(cc, a, b, fi, ca.x[gi]))
          throw ClaimFailure("composite-in-y", "composite disagrees with the Y-set composition");
        if (!ok) {
          c.status = Status::fail;
          c.witness = json{{"f", fi}, {"g", s.describe(m.morphism_id(g))}, {"images", images.size()}};
          return;
        }
        ++checked;
      }
    }
    c.details["composites"] = checked;
  }));

  if (!layer.ec) {
    out.push_back(skipped_claim("transport-independent", kSection3Suite, "", "vertex group is not abelian"));
  } else {
    out.push_back(run_claim("transport-independent", kSection3Suite,
                            "transport of F(a,b) to F(c,d) does not depend on the carrying automorphism",
                            [&](ClaimResult& c) {
      c.surrogates.push_back("carrying automorphisms also match the binding classes");
      std::size_t targets = 0;
      for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
          if (x == y) continue;
          const auto all = layer.ec->all_transports(0, 1, x, y);
          if (all.size() != 1) {
            c.status = Status::fail;
            c.witness = json{{"target", {x, y}}, {"distinct transports", all.size()}};
            return;
          }
          ++targets;
        }
      c.details["targets"] = targets;
    }));
  }

  if (!m.is_cover()) {
    out.push_back(skipped_claim("noncentral-example", kSection3Suite, "", "only meaningful on the double cover"));
  } else {
    out.push_back(run_claim("noncentral-example", kSection3Suite,
                            "on the double cover G is a proper subgroup of Z(F) = F with |F| = 2|G|",
                            [&](ClaimResult& c) {
      const auto& p = layer.pair(0, 1);
      const auto& F = p.f.group();
      c.details["f order"] = F.order();
      c.details["g order"] = p.g.order();
      c.details["f abelian"] = F.is_abelian();
      if (F.order() != 2 * p.g.order() || !F.is_abelian()) {
        c.status = Status::fail;
        c.witness = json{{"f order", F.order()}, {"g order", p.g.order()}, {"f abelian", F.is_abelian()}};
      }
    }));
  }
  return out;
}

}  // namespace gpdlab
