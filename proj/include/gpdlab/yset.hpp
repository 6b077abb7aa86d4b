#pragma once

// Y-sets: the morphism tuples that look like a reference morphism over the
// source base and are interdefinable with it there. F is the group of their
// permutations induced by base-fixing automorphisms, G the part that also
// fixes the target base.

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "gpdlab/automorphism.hpp"
#include "gpdlab/errors.hpp"
#include "gpdlab/group.hpp"
#include "gpdlab/model.hpp"

namespace gpdlab {

struct YSet {
  std::vector<ElementId> base;
  Tuple reference;
  std::vector<Tuple> members;  // sorted

  std::size_t size() const noexcept { return members.size(); }
  bool contains(const Tuple& t) const { return std::binary_search(members.begin(), members.end(), t); }
  std::size_t index_of(const Tuple& t) const {
    auto it = std::lower_bound(members.begin(), members.end(), t);
    if (it == members.end() || *it != t) throw InputError("tuple is not in the Y-set");
    return static_cast<std::size_t>(it - members.begin());
  }
};

/// { g in orbit of f over base : g and f interdefinable over base }.
inline YSet compute_y_set(const MultiSortedStructure& s, std::vector<ElementId> base, const Tuple& f,
                          SearchBudget budget = {}) {
  std::sort(base.begin(), base.end());
  base.erase(std::unique(base.begin(), base.end()), base.end());
  YSet y{base, f, {}};
  for (auto& g : orbit_of(s, base, f, budget))
    if (interdefinable(s, base, f, g, budget)) y.members.push_back(std::move(g));
  return y;
}

/// Everything attached to an ordered pair of distinct objects.
struct PairGroups {
  std::size_t source = 0, target = 0;
  YSet y;
  RestrictedGroup f;            // F_ab acting on y.members
  Subgroup g;                   // G_ab inside f.group()
  std::vector<std::size_t> x;   // positions of Mor(a,b) in y.members, in hom order

  std::size_t order() const noexcept { return f.order(); }
  std::size_t act(std::size_t mu, std::size_t i) const { return f.action.act[mu][i]; }

  /// The unique element of F carrying member `from` to member `to`.
  std::size_t carrying(std::size_t from, std::size_t to) const {
    for (std::size_t mu = 0; mu < f.order(); ++mu)
      if (act(mu, from) == to) return mu;
    throw RegularityFailure("no element of F carries member " + std::to_string(from) + " to " + std::to_string(to));
  }
};

inline PairGroups pair_groups(const GroupoidModel& m, std::size_t a, std::size_t b, SearchBudget budget = {}) {
  if (a == b || a >= m.objects() || b >= m.objects()) throw InputError("pair_groups needs two distinct objects");
  const auto& s = m.structure();
  PairGroups p;
  p.source = a;
  p.target = b;
  const auto& hom = m.groupoid().hom(a, b);
  p.y = compute_y_set(s, m.base(a), m.morphism_tuple(hom.front()), budget);
  for (auto mor : hom) {
    const auto t = m.morphism_tuple(mor);
    if (!p.y.contains(t))
      throw DecompositionFailure("Mor(" + std::to_string(a) + "," + std::to_string(b) + ") is not inside Y: " +
                                 s.describe(t.back()));
    p.x.push_back(p.y.index_of(t));
  }

  p.f = restricted_group(s, p.y.base, p.y.members, Restriction::stabilizer, budget);
  if (!p.f.action.is_regular())
    throw RegularityFailure("F on Y(" + std::to_string(a) + "," + std::to_string(b) + ") has order " +
                            std::to_string(p.f.order()) + " on " + std::to_string(p.y.size()) + " points");

  const auto gr = restricted_group(s, m.base(a, b), p.y.members, Restriction::strict, budget);
  std::vector<std::size_t> members;
  for (const auto& perm : gr.action.act) {
    const auto e = p.f.element_of(perm);
    if (!e) throw RegularityFailure("an automorphism over both bases is missing from F");
    members.push_back(*e);
  }
  p.g = make_subgroup(p.f.group(), std::move(members));
  return p;
}

}  // namespace gpdlab
