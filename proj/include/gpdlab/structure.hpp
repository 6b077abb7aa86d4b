#pragma once

// Finite multi-sorted first-order structures and the groupoid encodings.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gpdlab/errors.hpp"
#include "gpdlab/groupoid.hpp"

namespace gpdlab {

/// Position of an element in the concatenation of all carriers.
using ElementId = std::uint32_t;
using Tuple = std::vector<ElementId>;

struct Element {
  std::size_t sort = 0;
  std::size_t index = 0;
  friend auto operator<=>(const Element&, const Element&) = default;
};

struct Sort {
  std::string name;
  std::size_t size = 0;
};

/// A total function from a product of sorts to a sort. `table` is indexed by
/// the argument tuple in mixed radix, first argument most significant, and
/// holds carrier-local indices.
struct Function {
  std::string name;
  std::vector<std::size_t> domain;
  std::size_t codomain = 0;
  std::vector<std::size_t> table;
};

struct Relation {
  std::string name;
  std::vector<std::size_t> sorts;
  std::vector<std::vector<std::size_t>> tuples;  // carrier-local indices
};

struct Constant {
  std::string name;
  std::size_t sort = 0;
  std::size_t index = 0;
};

inline constexpr std::size_t kMaxArity = 4;

class MultiSortedStructure {
 public:
  MultiSortedStructure() = default;

  MultiSortedStructure(std::vector<Sort> sorts, std::vector<Function> functions, std::vector<Relation> relations,
                       std::vector<Constant> constants = {})
      : sorts_(std::move(sorts)),
        functions_(std::move(functions)),
        relations_(std::move(relations)),
        constants_(std::move(constants)) {
    std::size_t off = 0;
    for (const auto& s : sorts_) {
      if (s.size == 0) throw InputError("sort '" + s.name + "' is empty");
      offsets_.push_back(off);
      off += s.size;
    }
    total_ = off;
    if (total_ >= 65536) throw InputError("structure too large");
    for (const auto& f : functions_) {
      if (f.domain.empty() || f.domain.size() > kMaxArity)
        throw InputError("function '" + f.name + "' has unsupported arity");
      std::size_t rows = 1;
      for (auto d : f.domain) {
        if (d >= sorts_.size()) throw InputError("function '" + f.name + "' has an unknown domain sort");
        rows *= sorts_[d].size;
      }
      if (f.codomain >= sorts_.size()) throw InputError("function '" + f.name + "' has an unknown codomain");
      if (f.table.size() != rows) throw InputError("function '" + f.name + "' table has the wrong length");
      for (auto v : f.table)
        if (v >= sorts_[f.codomain].size) throw InputError("function '" + f.name + "' value out of carrier");
    }
    for (auto& r : relations_) {
      if (r.sorts.empty() || r.sorts.size() > kMaxArity)
        throw InputError("relation '" + r.name + "' has unsupported arity");
      for (auto s : r.sorts)
        if (s >= sorts_.size()) throw InputError("relation '" + r.name + "' has an unknown sort");
      for (const auto& t : r.tuples) {
        if (t.size() != r.sorts.size()) throw InputError("relation '" + r.name + "' tuple has the wrong arity");
        for (std::size_t i = 0; i < t.size(); ++i)
          if (t[i] >= sorts_[r.sorts[i]].size) throw InputError("relation '" + r.name + "' entry out of carrier");
      }
      std::sort(r.tuples.begin(), r.tuples.end());
      r.tuples.erase(std::unique(r.tuples.begin(), r.tuples.end()), r.tuples.end());
    }
    for (const auto& c : constants_)
      if (c.sort >= sorts_.size() || c.index >= sorts_[c.sort].size)
        throw InputError("constant '" + c.name + "' out of carrier");
  }

  const std::vector<Sort>& sorts() const noexcept { return sorts_; }
  const std::vector<Function>& functions() const noexcept { return functions_; }
  const std::vector<Relation>& relations() const noexcept { return relations_; }
  const std::vector<Constant>& constants() const noexcept { return constants_; }

  std::size_t carrier_size() const noexcept { return total_; }
  std::size_t offset(std::size_t sort) const { return offsets_[sort]; }

  std::optional<std::size_t> find_sort(const std::string& name) const { return find(sorts_, name); }
  std::optional<std::size_t> find_function(const std::string& name) const { return find(functions_, name); }
  std::optional<std::size_t> find_relation(const std::string& name) const { return find(relations_, name); }

  std::size_t sort_index(const std::string& name) const {
    auto s = find_sort(name);
    if (!s) throw InputError("no sort named '" + name + "'");
    return *s;
  }

  ElementId id(Element e) const {
    if (e.sort >= sorts_.size() || e.index >= sorts_[e.sort].size) throw InputError("element out of range");
    return static_cast<ElementId>(offsets_[e.sort] + e.index);
  }
  ElementId id(const std::string& sort, std::size_t index) const { return id(Element{sort_index(sort), index}); }

  Element element(ElementId id) const {
    const auto it = std::upper_bound(offsets_.begin(), offsets_.end(), static_cast<std::size_t>(id));
    const auto s = static_cast<std::size_t>(it - offsets_.begin()) - 1;
    return Element{s, id - offsets_[s]};
  }

  std::size_t sort_of(ElementId id) const { return element(id).sort; }

  std::string describe(ElementId id) const {
    const auto e = element(id);
    return sorts_[e.sort].name + ":" + std::to_string(e.index);
  }

  /// Value of function `f` on global argument ids, as a global id.
  ElementId apply(std::size_t f, std::span<const ElementId> args) const {
    const auto& fn = functions_[f];
    std::size_t row = 0;
    for (std::size_t i = 0; i < fn.domain.size(); ++i)
      row = row * sorts_[fn.domain[i]].size + (args[i] - offsets_[fn.domain[i]]);
    return static_cast<ElementId>(offsets_[fn.codomain] + fn.table[row]);
  }

  /// Relation tuples as global ids.
  std::vector<Tuple> global_tuples(std::size_t r) const {
    const auto& rel = relations_[r];
    std::vector<Tuple> out;
    out.reserve(rel.tuples.size());
    for (const auto& t : rel.tuples) {
      Tuple g(t.size());
      for (std::size_t i = 0; i < t.size(); ++i) g[i] = static_cast<ElementId>(offsets_[rel.sorts[i]] + t[i]);
      out.push_back(std::move(g));
    }
    return out;
  }

  /// All elements of a sort, as global ids.
  std::vector<ElementId> carrier(std::size_t sort) const {
    std::vector<ElementId> out(sorts_[sort].size);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = static_cast<ElementId>(offsets_[sort] + i);
    return out;
  }

  friend bool operator==(const MultiSortedStructure& a, const MultiSortedStructure& b) {
    auto key = [](const MultiSortedStructure& s) {
      std::vector<std::string> k;
      for (const auto& x : s.sorts_) k.push_back(x.name + "#" + std::to_string(x.size));
      return k;
    };
    if (key(a) != key(b) || a.functions_.size() != b.functions_.size() || a.relations_.size() != b.relations_.size())
      return false;
    for (std::size_t i = 0; i < a.functions_.size(); ++i) {
      const auto &f = a.functions_[i], &g = b.functions_[i];
      if (f.name != g.name || f.domain != g.domain || f.codomain != g.codomain || f.table != g.table) return false;
    }
    for (std::size_t i = 0; i < a.relations_.size(); ++i) {
      const auto &r = a.relations_[i], &q = b.relations_[i];
      if (r.name != q.name || r.sorts != q.sorts || r.tuples != q.tuples) return false;
    }
    return true;
  }

 private:
  template <class V>
  static std::optional<std::size_t> find(const V& v, const std::string& name) {
    for (std::size_t i = 0; i < v.size(); ++i)
      if (v[i].name == name) return i;
    return std::nullopt;
  }

  std::vector<Sort> sorts_;
  std::vector<Function> functions_;
  std::vector<Relation> relations_;
  std::vector<Constant> constants_;
  std::vector<std::size_t> offsets_;
  std::size_t total_ = 0;
};

/// Checks that a global-id permutation commutes with every function,
/// preserves every relation in both directions and fixes every constant.
/// On failure `reason` names the first violated item.
inline bool is_automorphism(const MultiSortedStructure& s, std::span<const ElementId> perm,
                            std::string* reason = nullptr) {
  auto fail = [&](std::string why) {
    if (reason) *reason = std::move(why);
    return false;
  };
  const auto n = s.carrier_size();
  if (perm.size() != n) return fail("wrong length");
  std::vector<char> hit(n, 0);
  for (std::size_t x = 0; x < n; ++x) {
    if (perm[x] >= n || hit[perm[x]]) return fail("not a bijection");
    hit[perm[x]] = 1;
    if (s.sort_of(static_cast<ElementId>(x)) != s.sort_of(perm[x])) return fail("does not preserve sorts");
  }
  for (std::size_t f = 0; f < s.functions().size(); ++f) {
    const auto& fn = s.functions()[f];
    std::vector<std::size_t> local(fn.domain.size(), 0);
    Tuple args(fn.domain.size()), imgs(fn.domain.size());
    for (std::size_t row = 0; row < fn.table.size(); ++row) {
      std::size_t r = row;
      for (std::size_t i = fn.domain.size(); i-- > 0;) {
        const auto sz = s.sorts()[fn.domain[i]].size;
        args[i] = static_cast<ElementId>(s.offset(fn.domain[i]) + r % sz);
        r /= sz;
      }
      for (std::size_t i = 0; i < args.size(); ++i) imgs[i] = perm[args[i]];
      if (perm[s.apply(f, args)] != s.apply(f, imgs)) return fail("does not commute with " + fn.name);
    }
  }
  for (std::size_t r = 0; r < s.relations().size(); ++r) {
    auto tuples = s.global_tuples(r);
    // tuples are sorted; a bijection maps the set into itself iff onto it
    for (const auto& t : tuples) {
      Tuple img(t.size());
      for (std::size_t i = 0; i < t.size(); ++i) img[i] = perm[t[i]];
      if (!std::binary_search(tuples.begin(), tuples.end(), img))
        return fail("does not preserve " + s.relations()[r].name);
    }
  }
  for (const auto& c : s.constants()) {
    const auto id = s.id(Element{c.sort, c.index});
    if (perm[id] != id) return fail("moves constant " + c.name);
  }
  return true;
}

// ---------------------------------------------------------------------------
// Groupoid encodings

/// Sorts O and M; functions init, ter : M -> O and inverse : M -> M; the
/// ternary relation comp(f, g, h) holding iff h = f then g. Object o is O:o
/// and morphism m is M:m.
inline MultiSortedStructure encode_groupoid(const FiniteGroupoid& gpd) {
  const std::size_t n = gpd.object_count(), m = gpd.morphism_count();
  std::vector<Sort> sorts{{"O", n}, {"M", m}};
  Function init{"init", {1}, 0, {}}, ter{"ter", {1}, 0, {}}, inv{"inverse", {1}, 1, {}};
  for (std::size_t f = 0; f < m; ++f) {
    init.table.push_back(gpd.init(f));
    ter.table.push_back(gpd.ter(f));
    inv.table.push_back(gpd.inverse(f));
  }
  Relation comp{"comp", {1, 1, 1}, {}};
  for (const auto& [f, g, h] : gpd.composition_triples()) comp.tuples.push_back({f, g, h});
  return MultiSortedStructure(std::move(sorts), {std::move(init), std::move(ter), std::move(inv)}, {std::move(comp)});
}

/// encode_groupoid plus a sort I of size 2|O|, an equivalence E on I with
/// classes {2o, 2o+1}, and pi : I -> O with pi(i) = i / 2.
inline MultiSortedStructure encode_double_cover(const FiniteGroupoid& gpd) {
  const auto plain = encode_groupoid(gpd);
  auto sorts = plain.sorts();
  auto functions = plain.functions();
  auto relations = plain.relations();
  const std::size_t n = gpd.object_count();
  sorts.push_back({"I", 2 * n});
  const std::size_t I = sorts.size() - 1;
  Function pi{"pi", {I}, 0, {}};
  for (std::size_t i = 0; i < 2 * n; ++i) pi.table.push_back(i / 2);
  functions.push_back(std::move(pi));
  Relation e{"E", {I, I}, {}};
  for (std::size_t i = 0; i < 2 * n; ++i)
    for (std::size_t j = 0; j < 2 * n; ++j)
      if (i / 2 == j / 2) e.tuples.push_back({i, j});
  relations.push_back(std::move(e));
  return MultiSortedStructure(std::move(sorts), std::move(functions), std::move(relations));
}

/// Reads the groupoid back from sorts O, M, functions init, ter (inverse is
/// optional) and relation comp, then validates it. Identities are the loops
/// e with comp(e, e, e).
inline FiniteGroupoid decode_groupoid(const MultiSortedStructure& s) {
  const auto O = s.find_sort("O"), M = s.find_sort("M");
  const auto fi = s.find_function("init"), ft = s.find_function("ter"), fv = s.find_function("inverse");
  const auto rc = s.find_relation("comp");
  if (!O || !M || !fi || !ft || !rc) throw InputError("structure does not encode a groupoid (need O, M, init, ter, comp)");
  const auto& init = s.functions()[*fi];
  const auto& ter = s.functions()[*ft];
  const auto& comp = s.relations()[*rc];
  if (init.domain != std::vector<std::size_t>{*M} || init.codomain != *O || ter.domain != init.domain ||
      ter.codomain != *O || comp.sorts != std::vector<std::size_t>{*M, *M, *M})
    throw InputError("groupoid signature has the wrong sorts");
  RawGroupoid raw;
  raw.objects = s.sorts()[*O].size;
  raw.init = init.table;
  raw.ter = ter.table;
  for (const auto& t : comp.tuples) raw.composition.push_back({t[0], t[1], t[2]});
  if (fv) {
    const auto& inv = s.functions()[*fv];
    if (inv.domain != init.domain || inv.codomain != *M) throw InputError("inverse has the wrong sorts");
    raw.inverse = inv.table;
  }
  raw.identities.assign(raw.objects, raw.init.size());
  for (const auto& t : comp.tuples)
    if (t[0] == t[1] && t[1] == t[2] && raw.init[t[0]] == raw.ter[t[0]]) {
      auto& slot = raw.identities[raw.init[t[0]]];
      if (slot != raw.init.size() && slot != t[0]) throw AxiomViolation("identity", {slot, t[0]});
      slot = t[0];
    }
  for (std::size_t o = 0; o < raw.objects; ++o)
    if (raw.identities[o] == raw.init.size()) throw AxiomViolation("identity", {o});
  return validate_groupoid(raw);
}

}  // namespace gpdlab
