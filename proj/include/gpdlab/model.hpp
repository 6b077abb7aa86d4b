#pragma once

// A groupoid read back out of its encoding, with the tuple layout used by
// every higher construction: object tuples, morphism tuples that carry their
// endpoint tuples, and the base sets standing in for algebraic closures.

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "gpdlab/errors.hpp"
#include "gpdlab/groupoid.hpp"
#include "gpdlab/structure.hpp"

namespace gpdlab {

class GroupoidModel {
 public:
  explicit GroupoidModel(MultiSortedStructure s) : s_(std::move(s)), gpd_(decode_groupoid(s_)) {
    O_ = s_.sort_index("O");
    M_ = s_.sort_index("M");
    const auto I = s_.find_sort("I");
    const auto pi = s_.find_function("pi");
    const auto E = s_.find_relation("E");
    cover_ = I && pi && E;
    const std::size_t n = gpd_.object_count();
    fiber_.assign(n, {});
    if (cover_) {
      const auto& fn = s_.functions()[*pi];
      if (fn.domain != std::vector<std::size_t>{*I} || fn.codomain != O_) throw InputError("pi has the wrong sorts");
      for (auto i : s_.carrier(*I)) {
        const ElementId arg[] = {i};
        fiber_[s_.element(s_.apply(*pi, arg)).index].push_back(i);
      }
      const auto tuples = s_.global_tuples(*E);
      for (std::size_t o = 0; o < n; ++o) {
        if (fiber_[o].size() != 2) throw InputError("every fiber of pi must have two elements");
        // E must be exactly the fiber partition
        for (auto x : fiber_[o])
          for (auto y : fiber_[o])
            if (!std::binary_search(tuples.begin(), tuples.end(), Tuple{x, y}))
              throw InputError("E does not relate the fiber over O:" + std::to_string(o));
      }
      if (tuples.size() != 4 * n) throw InputError("E relates elements of different fibers");
    }
  }

  const MultiSortedStructure& structure() const noexcept { return s_; }
  const FiniteGroupoid& groupoid() const noexcept { return gpd_; }
  bool is_cover() const noexcept { return cover_; }
  std::size_t objects() const noexcept { return gpd_.object_count(); }

  ElementId object_id(std::size_t o) const { return static_cast<ElementId>(s_.offset(O_) + o); }
  ElementId morphism_id(std::size_t m) const { return static_cast<ElementId>(s_.offset(M_) + m); }

  /// Plain: (o). Cover: (i0, i1, o) with i0 < i1 the fiber over o.
  Tuple object_tuple(std::size_t o) const {
    Tuple t = fiber_[o];
    t.push_back(object_id(o));
    return t;
  }

  /// object_tuple(init) ++ object_tuple(ter) ++ (m).
  Tuple morphism_tuple(std::size_t m) const {
    Tuple t = object_tuple(gpd_.init(m));
    const auto b = object_tuple(gpd_.ter(m));
    t.insert(t.end(), b.begin(), b.end());
    t.push_back(morphism_id(m));
    return t;
  }

  /// The groupoid morphism a tuple ends in.
  std::size_t morphism_of(const Tuple& t) const {
    if (t.empty() || s_.sort_of(t.back()) != M_) throw InputError("tuple does not end in a morphism");
    return t.back() - s_.offset(M_);
  }

  /// Mor(a, b) as morphism tuples, sorted.
  std::vector<Tuple> hom_tuples(std::size_t a, std::size_t b) const {
    std::vector<Tuple> out;
    for (auto m : gpd_.hom(a, b)) out.push_back(morphism_tuple(m));
    std::sort(out.begin(), out.end());
    return out;
  }

  std::vector<ElementId> loops(std::size_t o) const {
    std::vector<ElementId> out;
    for (auto m : gpd_.hom(o, o)) out.push_back(morphism_id(m));
    return out;
  }

  /// Object tuple of o together with its vertex group.
  std::vector<ElementId> base(std::size_t o) const {
    auto out = object_tuple(o);
    const auto l = loops(o);
    out.insert(out.end(), l.begin(), l.end());
    std::sort(out.begin(), out.end());
    return out;
  }

  std::vector<ElementId> base(std::size_t a, std::size_t b) const { return join(base(a), base(b)); }

  /// base(a, b) plus Mor(a, b): the closure of a pair.
  std::vector<ElementId> pair_closure(std::size_t a, std::size_t b) const {
    auto out = base(a, b);
    for (auto m : gpd_.hom(a, b)) out.push_back(morphism_id(m));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  static std::vector<ElementId> join(std::vector<ElementId> a, const std::vector<ElementId>& b) {
    a.insert(a.end(), b.begin(), b.end());
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
    return a;
  }

 private:
  MultiSortedStructure s_;
  FiniteGroupoid gpd_;
  std::size_t O_ = 0, M_ = 0;
  bool cover_ = false;
  std::vector<Tuple> fiber_;
};

inline GroupoidModel standard_model(const FiniteGroup& g, std::size_t n, bool cover) {
  auto gpd = build_standard_groupoid(g, n);
  return GroupoidModel(cover ? encode_double_cover(gpd) : encode_groupoid(gpd));
}

}  // namespace gpdlab
