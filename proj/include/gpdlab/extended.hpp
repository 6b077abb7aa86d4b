#pragma once

// The extended groupoid: Y-sets for every ordered pair of distinct objects,
// the canonical identifications between their F groups, composition on
// Y-sets, directed paths up to probe equivalence, and the quotient groupoid
// of 2-step paths.

#include <algorithm>
#include <array>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gpdlab/automorphism.hpp"
#include "gpdlab/errors.hpp"
#include "gpdlab/groupoid.hpp"
#include "gpdlab/model.hpp"
#include "gpdlab/yset.hpp"

namespace gpdlab {

/// (c0, g1, c1, ..., gn, cn); steps[i] indexes Y(objects[i], objects[i+1]).
struct DirectedPath {
  std::vector<std::size_t> objects;
  std::vector<std::size_t> steps;

  std::size_t length() const noexcept { return steps.size(); }
  std::size_t source() const { return objects.front(); }
  std::size_t target() const { return objects.back(); }
  friend bool operator==(const DirectedPath&, const DirectedPath&) = default;
  friend auto operator<=>(const DirectedPath&, const DirectedPath&) = default;
};

/// A probe: a fresh object e and a member k of Y(e, c0).
struct Probe {
  std::size_t object = 0;
  std::size_t member = 0;
};

class ExtendedConstruction {
 public:
  explicit ExtendedConstruction(const GroupoidModel& model, SearchBudget budget = {})
      : model_(model), budget_(budget), n_(model.objects()) {
    if (n_ < 3) throw InputError("the extended construction needs at least 3 objects");
    binding_ = binding_group(model.groupoid());
    pairs_.resize(n_ * n_);
    for (std::size_t a = 0; a < n_; ++a)
      for (std::size_t b = 0; b < n_; ++b)
        if (a != b) pairs_[a * n_ + b] = std::make_unique<PairGroups>(pair_groups(model, a, b, budget));
    y_size_ = pair(0, 1).y.size();
    for (std::size_t a = 0; a < n_; ++a)
      for (std::size_t b = 0; b < n_; ++b)
        if (a != b && pair(a, b).y.size() != y_size_)
          throw RegularityFailure("Y-sets of different sizes for (0,1) and (" + std::to_string(a) + "," +
                                  std::to_string(b) + ")");
  }

  const GroupoidModel& model() const noexcept { return model_; }
  const BindingGroup& binding() const noexcept { return binding_; }
  std::size_t objects() const noexcept { return n_; }
  std::size_t y_size() const noexcept { return y_size_; }

  const PairGroups& pair(std::size_t a, std::size_t b) const {
    if (a == b || a >= n_ || b >= n_) throw InputError("no Y-set for the pair (" + std::to_string(a) + "," +
                                                       std::to_string(b) + ")");
    return *pairs_[a * n_ + b];
  }

  // -------------------------------------------------------------------------
  // Transport between pairs

  /// Prescription for automorphisms carrying (a, b) to (c, d): object tuples
  /// componentwise, and each binding class at a and b to the same class at c
  /// and d.
  std::vector<MapPair> carrying_prescription(std::size_t a, std::size_t b, std::size_t c, std::size_t d) const {
    auto out = tuple_map(model_.object_tuple(a), model_.object_tuple(c));
    const auto more = tuple_map(model_.object_tuple(b), model_.object_tuple(d));
    out.insert(out.end(), more.begin(), more.end());
    for (const auto& cls : binding_.classes) {
      out.emplace_back(model_.morphism_id(cls[a]), model_.morphism_id(cls[c]));
      out.emplace_back(model_.morphism_id(cls[b]), model_.morphism_id(cls[d]));
    }
    return out;
  }

  /// The F(a,b) -> F(c,d) map induced by one carrying automorphism phi:
  /// mu goes to phi mu phi^-1 restricted to Y(c,d).
  std::vector<std::size_t> transport_by(std::size_t a, std::size_t b, std::size_t c, std::size_t d,
                                        const Automorphism& phi) const {
    const auto& from = pair(a, b);
    const auto& to = pair(c, d);
    std::vector<std::size_t> image(from.y.size());
    for (std::size_t i = 0; i < image.size(); ++i) image[i] = to.y.index_of(image_of(phi, from.y.members[i]));
    std::vector<std::size_t> out(from.order());
    for (std::size_t mu = 0; mu < from.order(); ++mu) {
      Permutation p(to.y.size());
      for (std::size_t i = 0; i < image.size(); ++i) p[image[i]] = image[from.act(mu, i)];
      const auto e = to.f.element_of(p);
      if (!e) throw TransportAmbiguity("conjugate of an F element is not in the target F");
      out[mu] = *e;
    }
    return out;
  }

  /// Canonical F(a,b) -> F(c,d), computed from the least carrying
  /// automorphism. Cached.
  const std::vector<std::size_t>& transport(std::size_t a, std::size_t b, std::size_t c, std::size_t d) const {
    const std::array<std::size_t, 4> key{a, b, c, d};
    auto it = transports_.find(key);
    if (it != transports_.end()) return it->second;
    std::vector<std::size_t> t;
    if (a == c && b == d) {
      t.resize(pair(a, b).order());
      for (std::size_t i = 0; i < t.size(); ++i) t[i] = i;
    } else {
      const auto phi = find_automorphism(model_.structure(), {}, carrying_prescription(a, b, c, d), budget_);
      if (!phi)
        throw TransportAmbiguity("no automorphism carries (" + std::to_string(a) + "," + std::to_string(b) +
                                 ") to (" + std::to_string(c) + "," + std::to_string(d) + ")");
      t = transport_by(a, b, c, d, *phi);
    }
    return transports_.emplace(key, std::move(t)).first->second;
  }

  /// Every distinct transport induced by some carrying automorphism.
  std::vector<std::vector<std::size_t>> all_transports(std::size_t a, std::size_t b, std::size_t c,
                                                       std::size_t d) const {
    const auto& from = pair(a, b);
    Tuple support;
    for (const auto& t : from.y.members) support.insert(support.end(), t.begin(), t.end());
    AutomorphismSearch search(model_.structure(), {}, budget_);
    const auto pres = carrying_prescription(a, b, c, d);
    std::vector<std::vector<std::size_t>> out;
    search.run(pres, support, [&](const Automorphism& phi) {
      out.push_back(transport_by(a, b, c, d, phi));
      return true;
    });
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  // -------------------------------------------------------------------------
  // Composition on Y-sets

  /// h.g for g in Y(a,b), h in Y(b,c), a, b, c distinct: write g = tau(g0),
  /// h = sigma(h0) with g0, h0 groupoid morphisms and take
  /// sigma tau (h0 . g0), both group elements transported to F(a,c).
  /// Every decomposition is tried; disagreement throws DecompositionFailure.
  std::size_t compose(std::size_t a, std::size_t b, std::size_t c, std::size_t h, std::size_t g) const {
    return table(a, b, c)[h][g];
  }

  /// The result of one particular decomposition (positions in X order).
  std::size_t compose_via(std::size_t a, std::size_t b, std::size_t c, std::size_t h, std::size_t g,
                          std::size_t h0_pos, std::size_t g0_pos) const {
    const auto& ab = pair(a, b);
    const auto& bc = pair(b, c);
    const auto& ac = pair(a, c);
    const auto g0 = ab.x[g0_pos], h0 = bc.x[h0_pos];
    const auto tau = transport(a, b, a, c)[ab.carrying(g0, g)];
    const auto sigma = transport(b, c, a, c)[bc.carrying(h0, h)];
    const auto gm = model_.morphism_of(ab.y.members[g0]);
    const auto hm = model_.morphism_of(bc.y.members[h0]);
    const auto composite = ac.y.index_of(model_.morphism_tuple(model_.groupoid().then(gm, hm)));
    return ac.act(sigma, ac.act(tau, composite));
  }

  using Table = std::vector<std::vector<std::size_t>>;

  const Table& table(std::size_t a, std::size_t b, std::size_t c) const {
    if (a == b || b == c || a == c) throw InputError("composition needs three distinct objects");
    const std::array<std::size_t, 3> key{a, b, c};
    auto it = tables_.find(key);
    if (it != tables_.end()) return it->second;
    const auto& ab = pair(a, b);
    const auto& bc = pair(b, c);
    Table t(y_size_, std::vector<std::size_t>(y_size_));
    for (std::size_t h = 0; h < y_size_; ++h)
      for (std::size_t g = 0; g < y_size_; ++g) {
        std::optional<std::size_t> value;
        for (std::size_t hp = 0; hp < bc.x.size(); ++hp)
          for (std::size_t gp = 0; gp < ab.x.size(); ++gp) {
            const auto v = compose_via(a, b, c, h, g, hp, gp);
            if (value && *value != v)
              throw DecompositionFailure("composite of Y(" + std::to_string(b) + "," + std::to_string(c) + ")#" +
                                         std::to_string(h) + " after Y(" + std::to_string(a) + "," +
                                         std::to_string(b) + ")#" + std::to_string(g) +
                                         " depends on the decomposition");
            value = v;
          }
        t[h][g] = *value;
      }
    return tables_.emplace(key, std::move(t)).first->second;
  }

  /// The unique h in Y(b,c) with h.g = f, if exactly one exists.
  std::optional<std::size_t> divide_right(std::size_t a, std::size_t b, std::size_t c, std::size_t f,
                                          std::size_t g) const {
    std::optional<std::size_t> out;
    const auto& t = table(a, b, c);
    for (std::size_t h = 0; h < y_size_; ++h)
      if (t[h][g] == f) {
        if (out) return std::nullopt;
        out = h;
      }
    return out;
  }

  // -------------------------------------------------------------------------
  // Paths

  void check_path(const DirectedPath& q) const {
    if (q.objects.size() != q.steps.size() + 1) throw InputError("path has mismatched objects and steps");
    for (auto o : q.objects)
      if (o >= n_) throw InputError("path object out of range");
    for (std::size_t i = 0; i < q.steps.size(); ++i) {
      if (q.objects[i] == q.objects[i + 1]) throw InputError("path steps need distinct adjacent objects");
      if (q.steps[i] >= y_size_) throw InputError("path step out of range");
    }
  }

  /// Folds the path against a probe; the result indexes Y(e, target).
  std::size_t fold(const DirectedPath& q, Probe p) const {
    check_path(q);
    if (std::find(q.objects.begin(), q.objects.end(), p.object) != q.objects.end())
      throw InputError("probe object lies on the path");
    std::size_t g = p.member;
    for (std::size_t i = 0; i < q.steps.size(); ++i) g = compose(p.object, q.objects[i], q.objects[i + 1], q.steps[i], g);
    return g;
  }

  /// Probes usable for both paths, in increasing order.
  std::vector<Probe> probes(const DirectedPath& q, const DirectedPath& r) const {
    std::vector<Probe> out;
    for (std::size_t e = 0; e < n_; ++e) {
      if (std::find(q.objects.begin(), q.objects.end(), e) != q.objects.end()) continue;
      if (std::find(r.objects.begin(), r.objects.end(), e) != r.objects.end()) continue;
      for (std::size_t k = 0; k < y_size_; ++k) out.push_back({e, k});
    }
    return out;
  }

  bool equivalent_with(const DirectedPath& q, const DirectedPath& r, Probe p) const {
    if (q.source() != r.source() || q.target() != r.target()) throw InputError("paths with different endpoints");
    return fold(q, p) == fold(r, p);
  }

  /// Compares the paths under every usable probe; all probes must agree.
  bool equivalent(const DirectedPath& q, const DirectedPath& r) const {
    check_path(q);
    check_path(r);
    if (q.source() != r.source() || q.target() != r.target()) throw InputError("paths with different endpoints");
    const auto ps = probes(q, r);
    if (ps.empty()) throw NoProbeAvailable("no object is free of both paths");
    const bool first = equivalent_with(q, r, ps.front());
    for (const auto& p : ps)
      if (equivalent_with(q, r, p) != first)
        throw ProbeDisagreement("probe (" + std::to_string(p.object) + "," + std::to_string(p.member) +
                                ") disagrees with probe (" + std::to_string(ps.front().object) + "," +
                                std::to_string(ps.front().member) + ")");
    return first;
  }

  /// Least object other than c and d.
  std::size_t middle(std::size_t c, std::size_t d) const {
    for (std::size_t m = 0; m < n_; ++m)
      if (m != c && m != d) return m;
    throw NoProbeAvailable("too few objects for an intermediate");
  }

  /// Merges the leftmost pair of steps whose outer objects differ until
  /// none is left.
  DirectedPath merge_steps(DirectedPath q) const {
    check_path(q);
    for (;;) {
      std::size_t i = 1;
      while (i < q.objects.size() - 1 && q.objects[i - 1] == q.objects[i + 1]) ++i;
      if (i >= q.objects.size() - 1) return q;
      const auto v = compose(q.objects[i - 1], q.objects[i], q.objects[i + 1], q.steps[i], q.steps[i - 1]);
      q.objects.erase(q.objects.begin() + static_cast<std::ptrdiff_t>(i));
      q.steps.erase(q.steps.begin() + static_cast<std::ptrdiff_t>(i));
      q.steps[i - 1] = v;
    }
  }

  /// The canonical equivalent 2-step path (c, first of Y(c,m), m, y, d) with
  /// m = middle(c, d) unless another intermediate is asked for.
  DirectedPath reduce(const DirectedPath& q, std::optional<std::size_t> via = std::nullopt) const {
    const auto r = merge_steps(q);
    const auto c = r.source(), d = r.target();
    if (via && (*via >= n_ || *via == c || *via == d)) throw InputError("bad intermediate object");
    const auto m = via ? *via : middle(c, d);
    DirectedPath out{{c, m, d}, {0, 0}};
    if (r.length() == 0) throw InputError("cannot reduce an empty path");
    if (r.length() == 1) {
      auto y = divide_right(c, m, d, r.steps[0], 0);
      if (!y) throw DecompositionFailure("no unique divisor in Y(" + std::to_string(m) + "," + std::to_string(d) + ")");
      out.steps[1] = *y;
      return out;
    }
    std::optional<std::size_t> e;
    for (std::size_t o = 0; o < n_ && !e; ++o)
      if (o != m && std::find(r.objects.begin(), r.objects.end(), o) == r.objects.end()) e = o;
    if (!e) throw NoProbeAvailable("no probe object for a path through " + std::to_string(r.objects.size()) + " objects");
    const Probe p{*e, 0};
    const auto goal = fold(r, p);
    const auto start = compose(*e, c, m, 0, p.member);
    auto y = divide_right(*e, m, d, goal, start);
    if (!y) throw DecompositionFailure("no unique completion of the canonical path");
    out.steps[1] = *y;
    return out;
  }

 private:
  const GroupoidModel& model_;
  SearchBudget budget_;
  std::size_t n_;
  BindingGroup binding_;
  std::vector<std::unique_ptr<PairGroups>> pairs_;
  std::size_t y_size_ = 0;
  mutable std::map<std::array<std::size_t, 4>, std::vector<std::size_t>> transports_;
  mutable std::map<std::array<std::size_t, 3>, Table> tables_;
};

// ---------------------------------------------------------------------------
// The quotient groupoid

/// Morphism (c, d, y) is the class of the canonical path (c, 0, m, y, d).
struct ExtendedGroupoid {
  FiniteGroupoid groupoid;
  std::size_t objects = 0;
  std::size_t per_hom = 0;

  std::size_t id(std::size_t c, std::size_t d, std::size_t y) const { return (c * objects + d) * per_hom + y; }
};

inline DirectedPath canonical_path(const ExtendedConstruction& ec, std::size_t c, std::size_t d, std::size_t y) {
  return DirectedPath{{c, ec.middle(c, d), d}, {0, y}};
}

inline DirectedPath concatenate(DirectedPath q, const DirectedPath& r) {
  if (q.target() != r.source()) throw InputError("paths do not meet");
  q.objects.insert(q.objects.end(), r.objects.begin() + 1, r.objects.end());
  q.steps.insert(q.steps.end(), r.steps.begin(), r.steps.end());
  return q;
}

inline ExtendedGroupoid build_extended_groupoid(const ExtendedConstruction& ec) {
  const std::size_t n = ec.objects(), k = ec.y_size();
  ExtendedGroupoid out;
  out.objects = n;
  out.per_hom = k;
  RawGroupoid raw;
  raw.objects = n;
  raw.init.resize(n * n * k);
  raw.ter.resize(n * n * k);
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t d = 0; d < n; ++d)
      for (std::size_t y = 0; y < k; ++y) {
        raw.init[out.id(c, d, y)] = c;
        raw.ter[out.id(c, d, y)] = d;
      }
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t d = 0; d < n; ++d)
      for (std::size_t e = 0; e < n; ++e)
        for (std::size_t y1 = 0; y1 < k; ++y1)
          for (std::size_t y2 = 0; y2 < k; ++y2) {
            const auto r = ec.reduce(concatenate(canonical_path(ec, c, d, y1), canonical_path(ec, d, e, y2)));
            raw.composition.push_back({out.id(c, d, y1), out.id(d, e, y2), out.id(c, e, r.steps[1])});
          }
  // identity at c: the canonical loop that folds every probe to itself
  for (std::size_t c = 0; c < n; ++c) {
    std::optional<std::size_t> id;
    for (std::size_t y = 0; y < k && !id; ++y) {
      const auto q = canonical_path(ec, c, c, y);
      const auto ps = ec.probes(q, q);
      if (ps.empty()) throw NoProbeAvailable("no probe for the identity at " + std::to_string(c));
      bool all = true;
      for (const auto& p : ps) all = all && ec.fold(q, p) == p.member;
      if (all) id = y;
    }
    if (!id) throw AxiomViolation("identity", {c});
    raw.identities.push_back(out.id(c, c, *id));
  }
  out.groupoid = validate_groupoid(raw);
  return out;
}

/// The class of a groupoid morphism in the quotient: one step when the
/// endpoints differ, (c, u, m, u^-1 then x, c) for a loop x.
inline std::size_t inject(const ExtendedConstruction& ec, const ExtendedGroupoid& eg, std::size_t morphism) {
  const auto& gpd = ec.model().groupoid();
  const auto c = gpd.init(morphism), d = gpd.ter(morphism);
  DirectedPath q;
  if (c != d) {
    q = {{c, d}, {ec.pair(c, d).y.index_of(ec.model().morphism_tuple(morphism))}};
  } else {
    const auto m = ec.middle(c, d);
    const auto u = gpd.hom(c, m).front();
    const auto w = gpd.then(gpd.inverse(u), morphism);
    q = {{c, m, c},
         {ec.pair(c, m).y.index_of(ec.model().morphism_tuple(u)), ec.pair(m, c).y.index_of(ec.model().morphism_tuple(w))}};
  }
  const auto r = ec.reduce(q);
  return eg.id(c, d, r.steps[1]);
}

}  // namespace gpdlab
