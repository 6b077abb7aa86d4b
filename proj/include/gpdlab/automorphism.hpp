#pragma once

// Exhaustive automorphism search over finite multi-sorted structures.
//
// The search assigns images element by element. Candidates are restricted to
// the same colour class of an equitable-style refinement (sort, individualised
// base, function and relation fingerprints), and every assignment is
// propagated through functions and through relation columns that are
// functionally determined by the other columns (e.g. the third column of a
// composition relation). Branch order and candidate order are by element id,
// so every enumeration is deterministic.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "gpdlab/errors.hpp"
#include "gpdlab/group.hpp"
#include "gpdlab/structure.hpp"

namespace gpdlab {

struct SearchBudget {
  std::size_t max_carrier = 300;
  std::size_t max_results = 2'000'000;
  std::size_t max_paths = 1'000'000;  // per path family; larger families are sampled
};

using Automorphism = std::vector<ElementId>;
using MapPair = std::pair<ElementId, ElementId>;

class AutomorphismSearch {
 public:
  AutomorphismSearch(const MultiSortedStructure& s, std::span<const ElementId> fixed, SearchBudget budget = {})
      : s_(s), budget_(budget), n_(s.carrier_size()) {
    if (n_ > budget_.max_carrier) throw BudgetExceeded("carrier size", n_, budget_.max_carrier);
    fixed_.assign(fixed.begin(), fixed.end());
    std::sort(fixed_.begin(), fixed_.end());
    fixed_.erase(std::unique(fixed_.begin(), fixed_.end()), fixed_.end());
    for (auto x : fixed_)
      if (x >= n_) throw InputError("base element out of range");
    index_functions();
    index_relations();
    refine();
  }

  const std::vector<std::uint32_t>& colors() const noexcept { return color_; }
  const std::vector<ElementId>& fixed() const noexcept { return fixed_; }

  /// Calls `visit` once for every distinct image of `targets` under the
  /// automorphisms that fix the base pointwise and extend `prescribed`, with
  /// one such automorphism as witness. `visit` returns false to stop early.
  /// Returns the number of visits.
  std::size_t run(std::span<const MapPair> prescribed, std::span<const ElementId> targets,
                  const std::function<bool(const Automorphism&)>& visit) {
    reset();
    visited_ = 0;
    visit_ = &visit;
    order_.clear();
    std::vector<char> seen(n_, 0);
    for (auto t : targets) {
      if (t >= n_) throw InputError("target element out of range");
      if (!seen[t]) order_.push_back(t), seen[t] = 1;
    }
    n_targets_ = order_.size();
    for (ElementId x = 0; x < n_; ++x)
      if (!seen[x]) order_.push_back(x);

    bool ok = true;
    for (auto x : fixed_) ok = ok && assign(x, x);
    for (const auto& [x, y] : prescribed) {
      if (x >= n_ || y >= n_) throw InputError("prescribed element out of range");
      ok = ok && assign(x, y);
    }
    if (ok && propagate()) {
      bool found = false;
      descend(0, found);
    }
    return visited_;
  }

 private:
  static constexpr ElementId kUnset = static_cast<ElementId>(-1);

  struct FnEntry {
    std::size_t fn;
    Tuple args;
    ElementId value;
  };
  struct RelIndex {
    std::vector<Tuple> tuples;
    std::unordered_set<std::uint64_t> members;
    std::vector<std::optional<std::unordered_map<std::uint64_t, ElementId>>> determined;  // per column
  };

  static std::uint64_t pack(const Tuple& t, std::size_t skip = static_cast<std::size_t>(-1)) {
    std::uint64_t k = 0;
    for (std::size_t i = 0; i < t.size(); ++i)
      if (i != skip) k = (k << 16) | t[i];
    return k;
  }

  void index_functions() {
    fn_of_.assign(n_, {});
    fn_value_of_.assign(n_, {});
    for (std::size_t f = 0; f < s_.functions().size(); ++f) {
      const auto& fn = s_.functions()[f];
      for (std::size_t row = 0; row < fn.table.size(); ++row) {
        Tuple args(fn.domain.size());
        std::size_t r = row;
        for (std::size_t i = fn.domain.size(); i-- > 0;) {
          const auto sz = s_.sorts()[fn.domain[i]].size;
          args[i] = static_cast<ElementId>(s_.offset(fn.domain[i]) + r % sz);
          r /= sz;
        }
        const auto value = s_.apply(f, args);
        const auto e = fn_entries_.size();
        std::vector<ElementId> distinct = args;
        std::sort(distinct.begin(), distinct.end());
        distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
        for (auto a : distinct) fn_of_[a].push_back(e);
        fn_value_of_[value].push_back(e);
        fn_entries_.push_back({f, std::move(args), value});
      }
    }
  }

  void index_relations() {
    rel_of_.assign(n_, {});
    for (std::size_t r = 0; r < s_.relations().size(); ++r) {
      RelIndex idx;
      idx.tuples = s_.global_tuples(r);
      const auto arity = s_.relations()[r].sorts.size();
      for (const auto& t : idx.tuples) idx.members.insert(pack(t));
      idx.determined.resize(arity);
      if (arity > 1) {
        for (std::size_t c = 0; c < arity; ++c) {
          std::unordered_map<std::uint64_t, ElementId> m;
          bool functional = true;
          for (const auto& t : idx.tuples) {
            auto [it, fresh] = m.emplace(pack(t, c), t[c]);
            if (!fresh && it->second != t[c]) {
              functional = false;
              break;
            }
          }
          if (functional) idx.determined[c] = std::move(m);
        }
      }
      for (std::size_t ti = 0; ti < idx.tuples.size(); ++ti) {
        Tuple distinct = idx.tuples[ti];
        std::sort(distinct.begin(), distinct.end());
        distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
        for (auto x : distinct) rel_of_[x].push_back({r, ti});
      }
      rels_.push_back(std::move(idx));
    }
  }

  // Colour refinement; colours are invariant under every automorphism that
  // fixes the base pointwise.
  void refine() {
    color_.assign(n_, 0);
    {
      std::map<std::pair<std::size_t, std::size_t>, std::uint32_t> ids;
      std::vector<std::pair<std::size_t, std::size_t>> keys(n_);
      for (ElementId x = 0; x < n_; ++x) {
        auto pos = std::lower_bound(fixed_.begin(), fixed_.end(), x);
        const std::size_t rank = (pos != fixed_.end() && *pos == x) ? 1 + static_cast<std::size_t>(pos - fixed_.begin()) : 0;
        keys[x] = {s_.sort_of(x), rank};
        ids.emplace(keys[x], 0);
      }
      std::uint32_t c = 0;
      for (auto& [k, v] : ids) v = c++;
      for (ElementId x = 0; x < n_; ++x) color_[x] = ids[keys[x]];
    }
    auto mix = [](std::uint64_t h, std::uint64_t v) {
      h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
      return h;
    };
    std::size_t classes = 0;
    for (;;) {
      std::vector<std::vector<std::uint64_t>> sig(n_);
      for (ElementId x = 0; x < n_; ++x) sig[x].push_back(color_[x]);
      for (const auto& e : fn_entries_) {
        std::uint64_t h = mix(1, e.fn);
        for (auto a : e.args) h = mix(h, color_[a]);
        h = mix(h, color_[e.value]);
        for (std::size_t i = 0; i < e.args.size(); ++i) sig[e.args[i]].push_back(mix(h, 100 + i));
        sig[e.value].push_back(mix(h, 99));
      }
      for (std::size_t r = 0; r < rels_.size(); ++r)
        for (const auto& t : rels_[r].tuples) {
          std::uint64_t h = mix(2, r);
          for (auto a : t) h = mix(h, color_[a]);
          for (std::size_t i = 0; i < t.size(); ++i) sig[t[i]].push_back(mix(h, 200 + i));
        }
      for (auto& v : sig) std::sort(v.begin() + 1, v.end());
      std::map<std::vector<std::uint64_t>, std::uint32_t> ids;
      for (const auto& v : sig) ids.emplace(v, 0);
      std::uint32_t c = 0;
      for (auto& [k, v] : ids) v = c++;
      for (ElementId x = 0; x < n_; ++x) color_[x] = ids[sig[x]];
      if (ids.size() == classes) break;
      classes = ids.size();
    }
    class_members_.assign(classes, {});
    for (ElementId x = 0; x < n_; ++x) class_members_[color_[x]].push_back(x);
  }

  void reset() {
    img_.assign(n_, kUnset);
    pre_.assign(n_, kUnset);
    trail_.clear();
    queue_.clear();
  }

  bool assign(ElementId x, ElementId y) {
    if (img_[x] != kUnset) return img_[x] == y;
    if (pre_[y] != kUnset || color_[x] != color_[y]) return false;
    img_[x] = y;
    pre_[y] = x;
    trail_.push_back(x);
    queue_.push_back(x);
    return true;
  }

  void undo(std::size_t mark) {
    while (trail_.size() > mark) {
      const auto x = trail_.back();
      trail_.pop_back();
      pre_[img_[x]] = kUnset;
      img_[x] = kUnset;
    }
  }

  bool propagate() {
    Tuple scratch;
    for (std::size_t qi = 0; qi < queue_.size(); ++qi) {
      const auto x = queue_[qi];
      for (auto e : fn_of_[x]) {
        const auto& entry = fn_entries_[e];
        scratch.resize(entry.args.size());
        bool all = true;
        for (std::size_t i = 0; i < entry.args.size() && all; ++i) {
          scratch[i] = img_[entry.args[i]];
          all = scratch[i] != kUnset;
        }
        if (all && !assign(entry.value, s_.apply(entry.fn, scratch))) return fail();
      }
      for (const auto& [r, ti] : rel_of_[x]) {
        const auto& idx = rels_[r];
        const auto& t = idx.tuples[ti];
        scratch.resize(t.size());
        std::size_t missing = 0, col = 0;
        for (std::size_t i = 0; i < t.size(); ++i) {
          scratch[i] = img_[t[i]];
          if (scratch[i] == kUnset) ++missing, col = i;
        }
        if (missing == 0) {
          if (!idx.members.count(pack(scratch))) return fail();
        } else if (missing == 1 && idx.determined[col]) {
          auto it = idx.determined[col]->find(pack(scratch, col));
          if (it == idx.determined[col]->end() || !assign(t[col], it->second)) return fail();
        }
      }
    }
    queue_.clear();
    return true;
  }

  bool fail() {
    queue_.clear();
    return false;
  }

  // Returns false when the visitor asked to stop. `found` reports whether a
  // complete automorphism was reached below this node.
  bool descend(std::size_t pos, bool& found) {
    while (pos < order_.size() && img_[order_[pos]] != kUnset) ++pos;
    if (pos == order_.size()) {
      if (!is_automorphism(s_, img_)) return true;
      found = true;
      if (++visited_ > budget_.max_results) throw BudgetExceeded("automorphisms enumerated", visited_, budget_.max_results);
      return (*visit_)(img_);
    }
    const bool completing = pos >= n_targets_;
    const auto x = order_[pos];
    for (auto y : class_members_[color_[x]]) {
      if (pre_[y] != kUnset) continue;
      const auto mark = trail_.size();
      if (assign(x, y) && propagate()) {
        bool below = false;
        if (!descend(pos + 1, below)) {
          undo(mark);
          return false;
        }
        if (below && completing) {
          undo(mark);
          found = true;
          return true;
        }
        found = found || below;
      }
      undo(mark);
    }
    return true;
  }

  const MultiSortedStructure& s_;
  SearchBudget budget_;
  std::size_t n_;
  std::vector<ElementId> fixed_;
  std::vector<FnEntry> fn_entries_;
  std::vector<std::vector<std::size_t>> fn_of_, fn_value_of_;
  std::vector<RelIndex> rels_;
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> rel_of_;
  std::vector<std::uint32_t> color_;
  std::vector<std::vector<ElementId>> class_members_;

  std::vector<ElementId> img_, pre_, trail_, queue_, order_;
  std::size_t n_targets_ = 0;
  std::size_t visited_ = 0;
  const std::function<bool(const Automorphism&)>* visit_ = nullptr;
};

// ---------------------------------------------------------------------------
// Derived operations

/// Aut(s / base): every automorphism fixing `base` pointwise, sorted.
struct AutomorphismGroup {
  std::vector<ElementId> base;
  std::vector<Automorphism> members;

  std::size_t order() const noexcept { return members.size(); }
};

inline AutomorphismGroup automorphism_group(const MultiSortedStructure& s, std::span<const ElementId> base,
                                            SearchBudget budget = {}) {
  AutomorphismSearch search(s, base, budget);
  AutomorphismGroup g{search.fixed(), {}};
  Tuple all(s.carrier_size());
  for (ElementId x = 0; x < all.size(); ++x) all[x] = x;
  search.run({}, all, [&](const Automorphism& a) {
    g.members.push_back(a);
    return true;
  });
  std::sort(g.members.begin(), g.members.end());
  return g;
}

/// An automorphism fixing `base` and extending `prescribed`, if one exists.
inline std::optional<Automorphism> find_automorphism(const MultiSortedStructure& s, std::span<const ElementId> base,
                                                     std::span<const MapPair> prescribed, SearchBudget budget = {}) {
  AutomorphismSearch search(s, base, budget);
  std::optional<Automorphism> out;
  search.run(prescribed, {}, [&](const Automorphism& a) {
    out = a;
    return false;
  });
  return out;
}

inline Tuple image_of(const Automorphism& a, const Tuple& t) {
  Tuple out(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) out[i] = a[t[i]];
  return out;
}

/// Componentwise prescription x[i] -> y[i].
inline std::vector<MapPair> tuple_map(const Tuple& x, const Tuple& y) {
  if (x.size() != y.size()) throw InputError("tuples of different length");
  std::vector<MapPair> out;
  for (std::size_t i = 0; i < x.size(); ++i) out.emplace_back(x[i], y[i]);
  return out;
}

/// { a(x) : a in Aut(s / base) }, sorted.
inline std::vector<Tuple> orbit_of(const MultiSortedStructure& s, std::span<const ElementId> base, const Tuple& x,
                                   SearchBudget budget = {}) {
  AutomorphismSearch search(s, base, budget);
  std::vector<Tuple> out;
  search.run({}, x, [&](const Automorphism& a) {
    out.push_back(image_of(a, x));
    return true;
  });
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace detail {
inline bool moves(AutomorphismSearch& search, ElementId x) {
  bool moved = false;
  const ElementId target[] = {x};
  search.run({}, target, [&](const Automorphism& a) {
    moved = a[x] != x;
    return !moved;
  });
  return moved;
}
}  // namespace detail

/// Fixed points of Aut(s / base), sorted. This is the finite stand-in for
/// definable closure.
inline std::vector<ElementId> dcl_of(const MultiSortedStructure& s, std::span<const ElementId> base,
                                     SearchBudget budget = {}) {
  AutomorphismSearch search(s, base, budget);
  std::vector<std::size_t> class_size(s.carrier_size() + 1, 0);
  for (auto c : search.colors()) ++class_size[c];
  std::vector<ElementId> out;
  for (ElementId x = 0; x < s.carrier_size(); ++x)
    if (class_size[search.colors()[x]] == 1 || !detail::moves(search, x)) out.push_back(x);
  return out;
}

/// True iff every component of `x` is fixed by Aut(s / base + y).
inline bool determined_by(const MultiSortedStructure& s, std::span<const ElementId> base, const Tuple& y,
                          const Tuple& x, SearchBudget budget = {}) {
  std::vector<ElementId> b(base.begin(), base.end());
  b.insert(b.end(), y.begin(), y.end());
  AutomorphismSearch search(s, b, budget);
  bool moved = false;
  search.run({}, x, [&](const Automorphism& a) {
    moved = image_of(a, x) != x;
    return !moved;
  });
  return !moved;
}

inline bool interdefinable(const MultiSortedStructure& s, std::span<const ElementId> base, const Tuple& x,
                           const Tuple& y, SearchBudget budget = {}) {
  return x == y || (determined_by(s, base, y, x, budget) && determined_by(s, base, x, y, budget));
}

// ---------------------------------------------------------------------------
// Restricted groups

/// The group of restrictions to a tuple set `domain` of automorphisms fixing
/// a base. Element k acts on the domain by `action.act[k]` (indices into
/// `domain`) and `witness[k]` is one automorphism inducing it.
struct RestrictedGroup {
  std::vector<Tuple> domain;  // sorted
  GroupAction action;
  std::vector<Automorphism> witness;

  const FiniteGroup& group() const noexcept { return action.group; }
  std::size_t order() const noexcept { return action.group.order(); }

  std::size_t index_of(const Tuple& t) const {
    auto it = std::lower_bound(domain.begin(), domain.end(), t);
    if (it == domain.end() || *it != t) throw InputError("tuple is not in the domain");
    return static_cast<std::size_t>(it - domain.begin());
  }

  /// Group element acting as `perm` on the domain, if any.
  std::optional<std::size_t> element_of(const Permutation& perm) const {
    for (std::size_t k = 0; k < order(); ++k)
      if (action.act[k] == perm) return k;
    return std::nullopt;
  }
};

enum class Restriction {
  strict,      ///< the domain must be invariant under every base-fixing automorphism
  stabilizer,  ///< keep only automorphisms that map the domain onto itself
};

inline RestrictedGroup restricted_group(const MultiSortedStructure& s, std::span<const ElementId> base,
                                        std::vector<Tuple> domain, Restriction mode = Restriction::strict,
                                        SearchBudget budget = {}) {
  std::sort(domain.begin(), domain.end());
  domain.erase(std::unique(domain.begin(), domain.end()), domain.end());
  if (domain.empty()) throw InputError("restricted group needs a non-empty domain");
  Tuple support;
  for (const auto& t : domain) support.insert(support.end(), t.begin(), t.end());
  std::sort(support.begin(), support.end());
  support.erase(std::unique(support.begin(), support.end()), support.end());

  AutomorphismSearch search(s, base, budget);
  std::map<Permutation, Automorphism> found;
  search.run({}, support, [&](const Automorphism& a) {
    Permutation p(domain.size());
    for (std::size_t i = 0; i < domain.size(); ++i) {
      const auto img = image_of(a, domain[i]);
      auto it = std::lower_bound(domain.begin(), domain.end(), img);
      if (it == domain.end() || *it != img) {
        if (mode == Restriction::strict) {
          std::string w;
          for (auto e : domain[i]) w += s.describe(e) + " ";
          throw NotInvariant("domain is not invariant: an automorphism moves the tuple ( " + w + ") outside it");
        }
        return true;
      }
      p[i] = static_cast<std::size_t>(it - domain.begin());
    }
    found.emplace(std::move(p), a);
    return true;
  });

  std::vector<Permutation> perms;
  for (const auto& [p, a] : found) perms.push_back(p);
  RestrictedGroup out;
  out.domain = std::move(domain);
  out.action.group = group_from_permutations(perms);
  out.action.domain = out.domain.size();
  // group_from_permutations orders elements as the sorted permutation list
  for (const auto& [p, a] : found) {
    out.action.act.push_back(p);
    out.witness.push_back(a);
  }
  return out;
}

}  // namespace gpdlab
