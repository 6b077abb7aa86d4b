#pragma once

// Finite stages of the groups attached to a pair of objects: for each tuple
// in a family of nested morphism tuples, the automorphisms of its Y-set over
// the source (F), those also fixing the target (G), and those preserving
// interdefinability of every smaller tuple in the family (Pi).

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "gpdlab/limits.hpp"
#include "gpdlab/model.hpp"
#include "gpdlab/report.hpp"

namespace gpdlab {

struct StageFamily {
  std::vector<std::string> names;
  std::vector<Tuple> tuples;
};

/// The plain tuple (a, b, m) and, on the double cover, the full morphism
/// tuple carrying both fibers.
inline StageFamily default_family(const GroupoidModel& m, std::size_t a, std::size_t b) {
  const auto mor = m.groupoid().hom(a, b).front();
  StageFamily fam;
  fam.names.push_back("plain");
  fam.tuples.push_back({m.object_id(a), m.object_id(b), m.morphism_id(mor)});
  if (m.is_cover()) {
    fam.names.push_back("full");
    fam.tuples.push_back(m.morphism_tuple(mor));
  }
  return fam;
}

struct Stage {
  RestrictedGroup f;  // on the Y-set of the tuple
  Subgroup g, pi;     // inside f.group()
};

struct StageData {
  StageFamily family;
  std::vector<Stage> stages;
  std::vector<std::vector<char>> leq;  // leq[i][j]: tuple i recoverable from tuple j
  std::map<std::pair<std::size_t, std::size_t>, RestrictionMap> maps;
  DirectedSystem gamma, pi;
};

namespace detail {

inline RawSystem subgroup_system(const StageData& d, bool use_pi) {
  RawSystem raw;
  raw.names = d.family.names;
  const std::size_t n = d.stages.size();
  auto sub = [&](std::size_t i) -> const Subgroup& { return use_pi ? d.stages[i].pi : d.stages[i].g; };
  for (std::size_t i = 0; i < n; ++i) raw.groups.push_back(subgroup_as_group(sub(i)));
  for (const auto& [key, map] : d.maps) {
    const auto [i, j] = key;
    raw.order.emplace_back(i, j);
    std::vector<std::size_t> chi;
    for (auto x : sub(j).members) {
      const auto y = map.map[x];
      if (!sub(i).contains(y))
        throw FunctorialityFailure("restriction from " + d.family.names[j] + " leaves the subgroup at " +
                                   d.family.names[i]);
      chi.push_back(static_cast<std::size_t>(
          std::lower_bound(sub(i).members.begin(), sub(i).members.end(), y) - sub(i).members.begin()));
    }
    raw.transitions[key] = std::move(chi);
  }
  return raw;
}

}  // namespace detail

inline StageData compute_stages(const GroupoidModel& m, std::size_t a, std::size_t b, StageFamily fam,
                                 SearchBudget budget = {}) {
  const auto& s = m.structure();
  const auto base_a = m.base(a);
  const auto base_ab = m.base(a, b);
  StageData d;
  const std::size_t n = fam.tuples.size();
  if (n == 0 || n > kMaxStage) throw UnsupportedSize("stage families hold 1 to 4 tuples");
  d.leq.assign(n, std::vector<char>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      d.leq[i][j] = i == j || determined_by(s, base_a, fam.tuples[j], fam.tuples[i], budget);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (d.leq[i][j] && d.leq[j][i])
        throw InputError("family tuples " + fam.names[i] + " and " + fam.names[j] + " are interdefinable");

  for (std::size_t i = 0; i < n; ++i) {
    const auto y = compute_y_set(s, base_a, fam.tuples[i], budget);
    Stage st;
    st.f = restricted_group(s, base_a, y.members, Restriction::stabilizer, budget);
    const auto gr = restricted_group(s, base_ab, y.members, Restriction::stabilizer, budget);
    std::vector<std::size_t> gm, pm;
    for (const auto& p : gr.action.act) {
      const auto e = st.f.element_of(p);
      if (!e) throw NotWellDefined("an automorphism over both bases is missing from F at " + fam.names[i]);
      gm.push_back(*e);
    }
    for (std::size_t k = 0; k < st.f.order(); ++k) {
      bool keeps = true;
      for (std::size_t j = 0; j < n && keeps; ++j)
        if (d.leq[j][i])
          keeps = interdefinable(s, base_a, fam.tuples[j], image_of(st.f.witness[k], fam.tuples[j]), budget);
      if (keeps) pm.push_back(k);
    }
    st.g = make_subgroup(st.f.group(), std::move(gm));
    st.pi = make_subgroup(st.f.group(), std::move(pm));
    d.stages.push_back(std::move(st));
  }

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && d.leq[i][j]) {
        auto r = restriction_epimorphism(s, base_a, base_a, fam.tuples[i], fam.tuples[j], budget);
        // both sides are built exactly as the stage groups, so numbering agrees
        if (r.from.action.act != d.stages[j].f.action.act || r.to.action.act != d.stages[i].f.action.act)
          throw NotWellDefined("restriction groups differ from the stage groups");
        d.maps.emplace(std::make_pair(i, j), std::move(r));
      }
  d.family = std::move(fam);
  d.gamma = validate_system(detail::subgroup_system(d, false));
  d.pi = validate_system(detail::subgroup_system(d, true));
  return d;
}

inline constexpr const char* kLimitsSuite = "limits";

namespace detail {

inline std::vector<std::size_t> residues(std::size_t from, std::size_t to) {
  std::vector<std::size_t> m(from);
  for (std::size_t x = 0; x < from; ++x) m[x] = x % to;
  return m;
}

inline std::vector<std::size_t> all_indices(std::size_t n) {
  std::vector<std::size_t> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = i;
  return v;
}

}  // namespace detail

/// Objects a = 0 and b = 1 with the default family.
inline std::vector<ClaimResult> verify_limits(const GroupoidModel& m, SearchBudget budget = {}) {
  std::vector<ClaimResult> out;
  const auto G = vertex_group(m.groupoid(), 0).group;

  out.push_back(run_claim("chain-limit", kLimitsSuite, "the limit of Z/8 -> Z/4 -> Z/2 is Z/8", [&](ClaimResult& c) {
    RawSystem raw;
    raw.names = {"Z/2", "Z/4", "Z/8"};
    raw.groups = {cyclic(2), cyclic(4), cyclic(8)};
    raw.order = {{0, 1}, {1, 2}};
    raw.transitions[{0, 1}] = detail::residues(4, 2);
    raw.transitions[{1, 2}] = detail::residues(8, 4);
    raw.transitions[{0, 2}] = detail::residues(8, 2);
    const auto lim = inverse_limit_stage(validate_system(raw), {0, 1, 2});
    c.details["order"] = lim.order();
    if (!isomorphic(lim, cyclic(8))) c.status = Status::fail, c.witness = json{{"order", lim.order()}};
  }));

  out.push_back(run_claim("constant-limit", kLimitsSuite, "a constant system has the constant group as limit",
                          [&](ClaimResult& c) {
    RawSystem raw;
    raw.groups = {G, G, G};
    raw.order = {{0, 1}, {1, 2}};
    for (auto key : {std::pair<std::size_t, std::size_t>{0, 1}, {1, 2}, {0, 2}})
      raw.transitions[key] = detail::all_indices(G.order());
    const auto lim = inverse_limit_stage(validate_system(raw), {0, 1, 2});
    c.details["order"] = lim.order();
    if (!isomorphic(lim, G)) c.status = Status::fail, c.witness = json{{"order", lim.order()}};
  }));

  const char* stage_ids[] = {"stage-systems-valid", "restriction-epimorphism", "g-pi-f-chain", "g-central-in-pi",
                             "normal-in-f", "gamma-stages-abelian", "stage-limits"};
  if (m.objects() < 4) {
    // with three objects the third is fixed once a and b are, so Y-sets pick
    // up tuples through it and the family stops being nested
    for (const char* id : stage_ids)
      out.push_back(skipped_claim(id, kLimitsSuite, "", "stages need at least 4 objects"));
    return out;
  }

  std::optional<StageData> data;
  out.push_back(run_claim("stage-systems-valid", kLimitsSuite,
                          "restrictions between nested tuples form directed systems of epimorphisms",
                          [&](ClaimResult& c) {
    c.surrogates.push_back("index set replaced by a finite family of nested morphism tuples");
    data = compute_stages(m, 0, 1, default_family(m, 0, 1), budget);
    c.details["indices"] = data->family.names;
  }));
  if (!data) {
    for (const char* id : stage_ids)
      if (std::string(id) != "stage-systems-valid") out.push_back(skipped_claim(id, kLimitsSuite, "", "stage data unavailable"));
    return out;
  }
  const auto& d = *data;
  const std::size_t n = d.stages.size();

  out.push_back(run_claim("restriction-epimorphism", kLimitsSuite,
                          "restriction from a larger tuple to a recoverable one is onto", [&](ClaimResult& c) {
    json edges = json::array();
    for (const auto& [key, r] : d.maps) {
      edges.push_back(json{{"from", d.family.names[key.second]}, {"to", d.family.names[key.first]},
                           {"source order", r.from.order()}, {"target order", r.to.order()},
                           {"kernel order", r.kernel_order()}});
      if (!r.surjective()) {
        c.status = Status::fail;
        c.witness = edges.back();
        return;
      }
    }
    c.details["edges"] = edges;
  }));

  auto per_stage = [&](const char* id, const char* anchor, auto&& test) {
    out.push_back(run_claim(id, kLimitsSuite, anchor, [&](ClaimResult& c) {
      for (std::size_t i = 0; i < n; ++i)
        if (!test(d.stages[i])) {
          c.status = Status::fail;
          c.witness = json{{"index", d.family.names[i]}, {"f order", d.stages[i].f.order()},
                           {"pi order", d.stages[i].pi.order()}, {"g order", d.stages[i].g.order()}};
          return;
        }
      json orders = json::object();
      for (std::size_t i = 0; i < n; ++i)
        orders[d.family.names[i]] = {d.stages[i].g.order(), d.stages[i].pi.order(), d.stages[i].f.order()};
      c.details["orders (g, pi, f)"] = orders;
    }));
  };
  per_stage("g-pi-f-chain", "G lies in Pi at every stage", [](const Stage& st) {
    return std::includes(st.pi.members.begin(), st.pi.members.end(), st.g.members.begin(), st.g.members.end());
  });
  per_stage("g-central-in-pi", "G is central in Pi at every stage",
            [](const Stage& st) { return centralizes(st.g, st.pi); });
  per_stage("normal-in-f", "G and Pi are normal in F at every stage",
            [](const Stage& st) { return is_normal(st.g) && is_normal(st.pi); });

  if (!G.is_abelian()) {
    out.push_back(skipped_claim("gamma-stages-abelian", kLimitsSuite, "", "vertex group is not abelian"));
  } else {
    per_stage("gamma-stages-abelian", "with abelian vertex groups every G stage is abelian",
              [](const Stage& st) { return subgroup_as_group(st.g).is_abelian(); });
  }

  out.push_back(run_claim("stage-limits", kLimitsSuite,
                          "the limits of the G and Pi systems are the groups at the top index",
                          [&](ClaimResult& c) {
    std::optional<std::size_t> top;
    for (std::size_t i = 0; i < n && !top; ++i) {
      bool above = true;
      for (std::size_t j = 0; j < n; ++j) above = above && d.leq[j][i];
      if (above) top = i;
    }
    if (!top) throw ClaimFailure("stage-limits", "family has no largest tuple");
    const auto all = detail::all_indices(n);
    const auto lg = inverse_limit_stage(d.gamma, all);
    const auto lp = inverse_limit_stage(d.pi, all);
    c.details["gamma order"] = lg.order();
    c.details["pi order"] = lp.order();
    if (!isomorphic(lg, d.gamma.group(*top)) || !isomorphic(lp, d.pi.group(*top)))
      c.status = Status::fail, c.witness = json{{"gamma order", lg.order()}, {"pi order", lp.order()}};
  }));
  return out;
}

}  // namespace gpdlab
