#pragma once

// Directed systems of finite groups, their finite-stage inverse limits, and
// the restriction maps between automorphism groups of nested Y-sets.

#include <algorithm>
#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "gpdlab/automorphism.hpp"
#include "gpdlab/errors.hpp"
#include "gpdlab/group.hpp"
#include "gpdlab/yset.hpp"

namespace gpdlab {

/// Unvalidated system data. `order` lists pairs (f, g) meaning f <= g; the
/// transition for (f, g) maps the group at g onto the group at f.
struct RawSystem {
  std::vector<std::string> names;
  std::vector<FiniteGroup> groups;
  std::vector<std::pair<std::size_t, std::size_t>> order;
  std::map<std::pair<std::size_t, std::size_t>, std::vector<std::size_t>> transitions;
};

class DirectedSystem {
 public:
  std::size_t size() const noexcept { return groups_.size(); }
  const std::string& name(std::size_t i) const { return names_[i]; }
  const FiniteGroup& group(std::size_t i) const { return groups_[i]; }
  bool leq(std::size_t f, std::size_t g) const { return leq_[f][g]; }
  /// The map from the group at g to the group at f, for f <= g.
  const std::vector<std::size_t>& transition(std::size_t f, std::size_t g) const {
    if (!leq(f, g)) throw InputError("indices are not comparable");
    return chi_.at({f, g});
  }

 private:
  friend DirectedSystem validate_system(const RawSystem& raw);
  std::vector<std::string> names_;
  std::vector<FiniteGroup> groups_;
  std::vector<std::vector<char>> leq_;
  std::map<std::pair<std::size_t, std::size_t>, std::vector<std::size_t>> chi_;
};

inline DirectedSystem validate_system(const RawSystem& raw) {
  const std::size_t n = raw.groups.size();
  if (n == 0) throw InputError("a directed system needs at least one index");
  DirectedSystem sys;
  sys.groups_ = raw.groups;
  sys.names_ = raw.names;
  for (std::size_t i = sys.names_.size(); i < n; ++i) sys.names_.push_back(std::to_string(i));
  const auto& nm = sys.names_;

  // reflexive-transitive closure
  auto& leq = sys.leq_;
  leq.assign(n, std::vector<char>(n, 0));
  for (std::size_t i = 0; i < n; ++i) leq[i][i] = 1;
  for (const auto& [f, g] : raw.order) {
    if (f >= n || g >= n) throw InputError("order pair out of range");
    leq[f][g] = 1;
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (leq[i][k] && leq[k][j]) leq[i][j] = 1;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (leq[i][j] && leq[j][i]) throw InputError("order is not antisymmetric at " + nm[i] + ", " + nm[j]);

  for (const auto& [key, map] : raw.transitions)
    if (key.first >= n || key.second >= n || !leq[key.first][key.second])
      throw InputError("transition given for a pair that is not ordered");

  for (std::size_t f = 0; f < n; ++f)
    for (std::size_t g = 0; g < n; ++g) {
      if (!leq[f][g]) continue;
      const auto& G = raw.groups[g];
      const auto& H = raw.groups[f];
      std::vector<std::size_t> chi;
      auto it = raw.transitions.find({f, g});
      if (f == g) {
        chi.resize(G.order());
        for (std::size_t x = 0; x < chi.size(); ++x) chi[x] = x;
        if (it != raw.transitions.end() && it->second != chi)
          throw FunctorialityFailure("transition at " + nm[f] + " is not the identity");
      } else {
        if (it == raw.transitions.end()) throw InputError("missing transition " + nm[g] + " -> " + nm[f]);
        chi = it->second;
        if (chi.size() != G.order()) throw InputError("transition " + nm[g] + " -> " + nm[f] + " has the wrong length");
        for (auto y : chi)
          if (y >= H.order()) throw InputError("transition " + nm[g] + " -> " + nm[f] + " leaves the target group");
        for (std::size_t x = 0; x < G.order(); ++x)
          for (std::size_t y = 0; y < G.order(); ++y)
            if (chi[G.mul(x, y)] != H.mul(chi[x], chi[y]))
              throw AxiomViolation("homomorphism", {g, f, x, y});
        std::vector<char> hit(H.order(), 0);
        for (auto y : chi) hit[y] = 1;
        if (std::find(hit.begin(), hit.end(), 0) != hit.end())
          throw TransitionNotEpi("transition " + nm[g] + " -> " + nm[f] + " is not onto");
      }
      sys.chi_[{f, g}] = std::move(chi);
    }

  for (std::size_t f = 0; f < n; ++f)
    for (std::size_t g = 0; g < n; ++g)
      for (std::size_t h = 0; h < n; ++h) {
        if (!leq[f][g] || !leq[g][h]) continue;
        const auto& fg = sys.chi_[{f, g}];
        const auto& gh = sys.chi_[{g, h}];
        const auto& fh = sys.chi_[{f, h}];
        for (std::size_t x = 0; x < fh.size(); ++x)
          if (fg[gh[x]] != fh[x])
            throw FunctorialityFailure("transitions do not compose along " + nm[f] + " <= " + nm[g] + " <= " + nm[h]);
      }

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      bool bound = false;
      for (std::size_t k = 0; k < n && !bound; ++k) bound = leq[i][k] && leq[j][k];
      if (!bound) throw NotDirected("indices " + nm[i] + " and " + nm[j] + " have no upper bound");
    }
  return sys;
}

inline constexpr std::size_t kMaxStage = 4;

/// Compatible tuples over a downward-closed set of indices, multiplied
/// componentwise. Element k of the result is the k-th tuple in
/// lexicographic order.
inline FiniteGroup inverse_limit_stage(const DirectedSystem& sys, std::vector<std::size_t> stage) {
  std::sort(stage.begin(), stage.end());
  stage.erase(std::unique(stage.begin(), stage.end()), stage.end());
  if (stage.empty()) throw InputError("empty stage");
  if (stage.size() > kMaxStage) throw UnsupportedSize("stages are limited to 4 indices");
  for (auto i : stage) {
    if (i >= sys.size()) throw InputError("stage index out of range");
    for (std::size_t j = 0; j < sys.size(); ++j)
      if (sys.leq(j, i) && !std::binary_search(stage.begin(), stage.end(), j))
        throw InputError("stage is not downward closed: " + sys.name(j) + " is missing");
  }
  const std::size_t k = stage.size();
  std::vector<std::vector<std::size_t>> tuples;
  std::vector<std::size_t> cur(k);
  auto rec = [&](auto&& self, std::size_t pos) -> void {
    if (pos == k) {
      tuples.push_back(cur);
      return;
    }
    for (std::size_t x = 0; x < sys.group(stage[pos]).order(); ++x) {
      bool ok = true;
      for (std::size_t q = 0; q < pos && ok; ++q) {
        const auto i = stage[q], j = stage[pos];
        if (sys.leq(i, j)) ok = sys.transition(i, j)[x] == cur[q];
        else if (sys.leq(j, i)) ok = sys.transition(j, i)[cur[q]] == x;
      }
      if (!ok) continue;
      cur[pos] = x;
      self(self, pos + 1);
    }
  };
  rec(rec, 0);
  detail::check_order(tuples.size(), "inverse limit stage");
  auto index = [&](const std::vector<std::size_t>& t) {
    return static_cast<std::size_t>(std::lower_bound(tuples.begin(), tuples.end(), t) - tuples.begin());
  };
  Table table(tuples.size(), std::vector<std::size_t>(tuples.size()));
  std::vector<std::size_t> prod(k), one(k);
  for (std::size_t q = 0; q < k; ++q) one[q] = sys.group(stage[q]).identity();
  for (std::size_t a = 0; a < tuples.size(); ++a)
    for (std::size_t b = 0; b < tuples.size(); ++b) {
      for (std::size_t q = 0; q < k; ++q) prod[q] = sys.group(stage[q]).mul(tuples[a][q], tuples[b][q]);
      table[a][b] = index(prod);
    }
  return validate_group(std::move(table), index(one), {});
}

/// The map from automorphisms of the larger Y-set (of f') to those of the
/// smaller one (of f), both over `group_base`; Y-sets are taken over `y_base`.
struct RestrictionMap {
  YSet from_y, to_y;
  RestrictedGroup from, to;
  std::vector<std::size_t> map;  // element of `from` -> element of `to`

  bool surjective() const {
    std::vector<char> hit(to.order(), 0);
    for (auto y : map) hit[y] = 1;
    return std::find(hit.begin(), hit.end(), 0) == hit.end();
  }
  std::size_t kernel_order() const {
    return static_cast<std::size_t>(std::count(map.begin(), map.end(), to.group().identity()));
  }
};

inline RestrictionMap restriction_epimorphism(const MultiSortedStructure& s, const std::vector<ElementId>& group_base,
                                              const std::vector<ElementId>& y_base, const Tuple& f,
                                              const Tuple& f_big, SearchBudget budget = {}) {
  RestrictionMap r;
  r.from_y = compute_y_set(s, y_base, f_big, budget);
  r.to_y = compute_y_set(s, y_base, f, budget);
  r.from = restricted_group(s, group_base, r.from_y.members, Restriction::stabilizer, budget);
  r.to = restricted_group(s, group_base, r.to_y.members, Restriction::stabilizer, budget);

  // every automorphism stabilizing the big Y-set, grouped by its action there
  Tuple support;
  for (const auto* y : {&r.from_y, &r.to_y})
    for (const auto& t : y->members) support.insert(support.end(), t.begin(), t.end());
  std::sort(support.begin(), support.end());
  support.erase(std::unique(support.begin(), support.end()), support.end());
  auto perm_on = [&](const Automorphism& a, const YSet& y) -> std::optional<Permutation> {
    Permutation p(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) {
      const auto img = image_of(a, y.members[i]);
      if (!y.contains(img)) return std::nullopt;
      p[i] = y.index_of(img);
    }
    return p;
  };
  std::map<Permutation, Permutation> induced;
  AutomorphismSearch search(s, group_base, budget);
  search.run({}, support, [&](const Automorphism& a) {
    const auto big = perm_on(a, r.from_y);
    if (!big) return true;
    const auto small = perm_on(a, r.to_y);
    if (!small) throw NotWellDefined("an automorphism stabilizing the larger Y-set moves the smaller one");
    auto [it, fresh] = induced.emplace(*big, *small);
    if (!fresh && it->second != *small)
      throw NotWellDefined("two automorphisms agreeing on the larger Y-set differ on the smaller one");
    return true;
  });
  r.map.resize(r.from.order());
  for (std::size_t k = 0; k < r.from.order(); ++k) {
    const auto e = r.to.element_of(induced.at(r.from.action.act[k]));
    if (!e) throw NotWellDefined("restriction is not induced by an automorphism of the smaller Y-set");
    r.map[k] = *e;
  }
  return r;
}

}  // namespace gpdlab
