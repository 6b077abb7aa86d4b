#pragma once

// Finite groupoids with a partial composition relation.
//
// Composition is written diagrammatically: compose(f, g) is "f, then g" and
// is defined exactly when ter(f) == init(g). In the usual right-to-left
// notation this is g o f.

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "gpdlab/errors.hpp"
#include "gpdlab/group.hpp"

namespace gpdlab {

/// Unvalidated groupoid tables, as read from input.
struct RawGroupoid {
  std::size_t objects = 0;
  std::vector<std::size_t> init;
  std::vector<std::size_t> ter;
  std::vector<std::array<std::size_t, 3>> composition;  // (f, g, compose(f, g))
  std::vector<std::size_t> identities;
  std::vector<std::size_t> inverse;  // optional; derived when empty
};

class FiniteGroupoid;
FiniteGroupoid validate_groupoid(const RawGroupoid& raw);

class FiniteGroupoid {
 public:
  std::size_t object_count() const noexcept { return objects_; }
  std::size_t morphism_count() const noexcept { return init_.size(); }
  std::size_t init(std::size_t m) const { return init_[m]; }
  std::size_t ter(std::size_t m) const { return ter_[m]; }
  std::size_t inverse(std::size_t m) const { return inverse_[m]; }
  std::size_t identity(std::size_t o) const { return identities_[o]; }

  /// f then g; empty when ter(f) != init(g).
  std::optional<std::size_t> compose(std::size_t f, std::size_t g) const {
    auto it = compose_.find(key(f, g));
    if (it == compose_.end()) return std::nullopt;
    return it->second;
  }

  /// compose() for pairs known to be composable.
  std::size_t then(std::size_t f, std::size_t g) const { return compose_.at(key(f, g)); }

  /// Sorted morphism ids from a to b.
  const std::vector<std::size_t>& hom(std::size_t a, std::size_t b) const { return hom_[a * objects_ + b]; }

  bool is_connected() const {
    for (const auto& h : hom_)
      if (h.empty()) return false;
    return true;
  }

  /// All defined compositions as (f, g, compose(f, g)), sorted.
  std::vector<std::array<std::size_t, 3>> composition_triples() const {
    std::vector<std::array<std::size_t, 3>> out;
    out.reserve(compose_.size());
    for (const auto& [k, h] : compose_) out.push_back({k / stride(), k % stride(), h});
    std::sort(out.begin(), out.end());
    return out;
  }

  RawGroupoid raw() const {
    return RawGroupoid{objects_, init_, ter_, composition_triples(), identities_, inverse_};
  }

 private:
  friend FiniteGroupoid validate_groupoid(const RawGroupoid&);
  friend FiniteGroupoid build_standard_groupoid(const FiniteGroup&, std::size_t);

  std::uint64_t stride() const { return init_.size() + 1; }
  std::uint64_t key(std::size_t f, std::size_t g) const { return f * stride() + g; }

  void index_homs() {
    hom_.assign(objects_ * objects_, {});
    for (std::size_t m = 0; m < init_.size(); ++m) hom_[init_[m] * objects_ + ter_[m]].push_back(m);
  }

  std::size_t objects_ = 0;
  std::vector<std::size_t> init_, ter_, inverse_, identities_;
  std::unordered_map<std::uint64_t, std::size_t> compose_;
  std::vector<std::vector<std::size_t>> hom_;
};

/// Checks every groupoid axiom. Throws AxiomViolation with kind "shape",
/// "composability", "functional", "totality", "identity", "inverse" or
/// "associativity" and the offending morphisms.
inline FiniteGroupoid validate_groupoid(const RawGroupoid& raw) {
  const std::size_t n_obj = raw.objects, n_mor = raw.init.size();
  if (n_obj == 0 || raw.ter.size() != n_mor || raw.identities.size() != n_obj)
    throw AxiomViolation("shape", {});
  for (std::size_t m = 0; m < n_mor; ++m)
    if (raw.init[m] >= n_obj || raw.ter[m] >= n_obj) throw AxiomViolation("shape", {m});
  for (auto id : raw.identities)
    if (id >= n_mor) throw AxiomViolation("shape", {id});
  if (!raw.inverse.empty()) {
    if (raw.inverse.size() != n_mor) throw AxiomViolation("shape", {});
    for (auto v : raw.inverse)
      if (v >= n_mor) throw AxiomViolation("shape", {v});
  }

  FiniteGroupoid g;
  g.objects_ = n_obj;
  g.init_ = raw.init;
  g.ter_ = raw.ter;
  g.identities_ = raw.identities;
  for (const auto& [f, h, fh] : raw.composition) {
    if (f >= n_mor || h >= n_mor || fh >= n_mor) throw AxiomViolation("shape", {f, h, fh});
    if (g.ter_[f] != g.init_[h] || g.init_[fh] != g.init_[f] || g.ter_[fh] != g.ter_[h])
      throw AxiomViolation("composability", {f, h, fh});
    auto [it, fresh] = g.compose_.emplace(g.key(f, h), fh);
    if (!fresh && it->second != fh) throw AxiomViolation("functional", {f, h});
  }
  g.index_homs();

  for (std::size_t f = 0; f < n_mor; ++f)
    for (std::size_t c = 0; c < n_obj; ++c)
      for (auto h : g.hom(g.ter_[f], c))
        if (!g.compose_.count(g.key(f, h))) throw AxiomViolation("totality", {f, h});

  for (std::size_t o = 0; o < n_obj; ++o) {
    const auto id = g.identities_[o];
    if (g.init_[id] != o || g.ter_[id] != o) throw AxiomViolation("identity", {id});
    for (std::size_t f = 0; f < n_mor; ++f) {
      if (g.init_[f] == o && g.then(id, f) != f) throw AxiomViolation("identity", {id, f});
      if (g.ter_[f] == o && g.then(f, id) != f) throw AxiomViolation("identity", {f, id});
    }
  }

  g.inverse_.assign(n_mor, n_mor);
  for (std::size_t f = 0; f < n_mor; ++f) {
    const auto a = g.init_[f], b = g.ter_[f];
    if (!raw.inverse.empty()) {
      const auto v = raw.inverse[f];
      if (g.init_[v] == b && g.ter_[v] == a && g.then(f, v) == g.identities_[a] && g.then(v, f) == g.identities_[b])
        g.inverse_[f] = v;
    } else {
      for (auto v : g.hom(b, a))
        if (g.then(f, v) == g.identities_[a] && g.then(v, f) == g.identities_[b]) {
          g.inverse_[f] = v;
          break;
        }
    }
    if (g.inverse_[f] == n_mor) throw AxiomViolation("inverse", {f});
  }

  for (std::size_t f = 0; f < n_mor; ++f)
    for (std::size_t c = 0; c < n_obj; ++c)
      for (auto h : g.hom(g.ter_[f], c)) {
        const auto fh = g.then(f, h);
        for (std::size_t d = 0; d < n_obj; ++d)
          for (auto k : g.hom(c, d))
            if (g.then(fh, k) != g.then(f, g.then(h, k))) throw AxiomViolation("associativity", {f, h, k});
      }
  return g;
}

/// Id of the morphism (a, x, b) in build_standard_groupoid(g, n).
inline std::size_t standard_morphism(std::size_t n, std::size_t group_order, std::size_t a, std::size_t x,
                                     std::size_t b) {
  return (a * n + b) * group_order + x;
}

/// The connected groupoid on n objects whose morphisms are triples (a, x, b)
/// with x in g, composed by (a, x, b) then (b, y, c) = (a, y*x, c).
inline FiniteGroupoid build_standard_groupoid(const FiniteGroup& grp, std::size_t n) {
  if (n == 0) throw InputError("standard groupoid needs at least one object");
  const std::size_t k = grp.order();
  FiniteGroupoid g;
  g.objects_ = n;
  g.init_.resize(n * n * k);
  g.ter_.resize(n * n * k);
  g.inverse_.resize(n * n * k);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t x = 0; x < k; ++x) {
        const auto m = standard_morphism(n, k, a, x, b);
        g.init_[m] = a;
        g.ter_[m] = b;
        g.inverse_[m] = standard_morphism(n, k, b, grp.inv(x), a);
      }
  for (std::size_t a = 0; a < n; ++a) g.identities_.push_back(standard_morphism(n, k, a, grp.identity(), a));
  g.compose_.reserve(n * n * n * k * k);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        for (std::size_t x = 0; x < k; ++x)
          for (std::size_t y = 0; y < k; ++y)
            g.compose_.emplace(g.key(standard_morphism(n, k, a, x, b), standard_morphism(n, k, b, y, c)),
                               standard_morphism(n, k, a, grp.mul(y, x), c));
  g.index_homs();
  return g;
}

// ---------------------------------------------------------------------------
// Vertex and binding groups

struct VertexGroup {
  std::size_t object = 0;
  std::vector<std::size_t> members;  // morphism ids, sorted; element k of `group` is members[k]
  FiniteGroup group;

  std::size_t position(std::size_t morphism) const {
    auto it = std::lower_bound(members.begin(), members.end(), morphism);
    if (it == members.end() || *it != morphism) throw InputError("morphism is not in the vertex group");
    return static_cast<std::size_t>(it - members.begin());
  }
};

/// Mor(a, a) as a group; element i times element j is members[j] then members[i].
inline VertexGroup vertex_group(const FiniteGroupoid& gpd, std::size_t a) {
  if (a >= gpd.object_count()) throw InputError("object out of range");
  VertexGroup v;
  v.object = a;
  v.members = gpd.hom(a, a);
  const std::size_t k = v.members.size();
  Table t(k, std::vector<std::size_t>(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) t[i][j] = v.position(gpd.then(v.members[j], v.members[i]));
  v.group = validate_group(std::move(t), v.position(gpd.identity(a)));
  return v;
}

/// The group identified with every vertex group of a connected abelian
/// groupoid by conjugation along morphisms. Class k has one representative
/// per object: classes[k][o] lies in Mor(o, o). Class order follows the
/// vertex group at object 0, so class k multiplies like element k of `group`.
struct BindingGroup {
  FiniteGroup group;
  std::vector<std::vector<std::size_t>> classes;
  std::vector<std::size_t> class_of;  // per morphism; npos for non-loops

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
};

inline BindingGroup binding_group(const FiniteGroupoid& gpd) {
  if (!gpd.is_connected()) throw InputError("binding group needs a connected groupoid");
  const std::size_t n = gpd.object_count();
  for (std::size_t o = 0; o < n; ++o)
    if (!vertex_group(gpd, o).group.is_abelian()) throw NonAbelianVertex(o);

  // conjugate sigma in Mor(a,a) to Mor(b,b) along f in Mor(a,b)
  auto transport = [&](std::size_t f, std::size_t sigma) { return gpd.then(gpd.then(gpd.inverse(f), sigma), f); };

  const auto base = vertex_group(gpd, 0);
  BindingGroup bg;
  bg.group = base.group;
  bg.class_of.assign(gpd.morphism_count(), BindingGroup::npos);
  for (std::size_t k = 0; k < base.members.size(); ++k) {
    std::vector<std::size_t> cls(n);
    for (std::size_t b = 0; b < n; ++b) {
      const auto& fs = gpd.hom(0, b);
      cls[b] = transport(fs.front(), base.members[k]);
      for (auto f : fs)
        if (transport(f, base.members[k]) != cls[b])
          throw TransportAmbiguity("conjugation to object " + std::to_string(b) + " depends on the morphism " +
                                   std::to_string(f));
      bg.class_of[cls[b]] = k;
    }
    bg.classes.push_back(std::move(cls));
  }
  // transports between any two objects must respect the classes
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (auto f : gpd.hom(a, b))
        for (std::size_t k = 0; k < bg.classes.size(); ++k)
          if (transport(f, bg.classes[k][a]) != bg.classes[k][b])
            throw TransportAmbiguity("conjugation along morphism " + std::to_string(f) + " leaves class " +
                                     std::to_string(k));
  return bg;
}

/// Left action of binding class k on a morphism f: f then sigma_ter(f).
inline std::size_t bind_act(const FiniteGroupoid& gpd, const BindingGroup& bg, std::size_t k, std::size_t f) {
  return gpd.then(f, bg.classes[k][gpd.ter(f)]);
}

/// The unique binding class k with bind_act(k, f) == g.
inline std::size_t bracket(const FiniteGroupoid& gpd, const BindingGroup& bg, std::size_t f, std::size_t g) {
  if (gpd.init(f) != gpd.init(g) || gpd.ter(f) != gpd.ter(g))
    throw InputError("bracket needs two morphisms with the same endpoints");
  for (std::size_t k = 0; k < bg.classes.size(); ++k)
    if (bind_act(gpd, bg, k, f) == g) return k;
  throw RegularityFailure("no binding class carries " + std::to_string(f) + " to " + std::to_string(g));
}

}  // namespace gpdlab
