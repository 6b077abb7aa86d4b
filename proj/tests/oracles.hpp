#pragma once

// Independent reference computations used to derive the frozen values in the
// unit tests. Deliberately naive: brute force over bijections, conjugation
// fixed points, direct enumeration of compatible tuples. Nothing here calls
// the search engine.

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "gpdlab/group.hpp"
#include "gpdlab/structure.hpp"

namespace oracle {

using gpdlab::FiniteGroup;

inline std::vector<std::pair<std::string, FiniteGroup>> small_groups() {
  using namespace gpdlab;
  return {{"trivial", cyclic(1)},
          {"Z2", cyclic(2)},
          {"Z3", cyclic(3)},
          {"Z4", cyclic(4)},
          {"Z2xZ2", make_standard_group("product:cyclic:2,cyclic:2")},
          {"Z6", cyclic(6)},
          {"S3", symmetric(3)},
          {"D3", dihedral(3)},
          {"Z2xZ3", make_standard_group("product:cyclic:2,cyclic:3")},
          {"D4", dihedral(4)},
          {"Q8", quaternion8()},
          {"Z8", cyclic(8)}};
}

/// Elements fixed by every inner automorphism x -> g x g^-1.
inline std::vector<std::size_t> center_by_conjugation(const FiniteGroup& g) {
  std::vector<std::size_t> z;
  for (std::size_t x = 0; x < g.order(); ++x) {
    bool fixed = true;
    for (std::size_t h = 0; h < g.order(); ++h)
      fixed = fixed && g.mul(g.mul(h, x), g.inv(h)) == x;
    if (fixed) z.push_back(x);
  }
  return z;
}

inline bool isomorphic_brute_force(const FiniteGroup& g, const FiniteGroup& h) {
  if (g.order() != h.order()) return false;
  std::vector<std::size_t> p(g.order());
  std::iota(p.begin(), p.end(), std::size_t{0});
  do {
    bool ok = true;
    for (std::size_t a = 0; a < g.order() && ok; ++a)
      for (std::size_t b = 0; b < g.order() && ok; ++b) ok = p[g.mul(a, b)] == h.mul(p[a], p[b]);
    if (ok) return true;
  } while (std::next_permutation(p.begin(), p.end()));
  return false;
}

/// Counts automorphisms of a structure fixing `base` by trying every
/// sort-preserving bijection. Only for tiny carriers.
inline std::size_t count_automorphisms_brute_force(const gpdlab::MultiSortedStructure& s,
                                                   const std::vector<gpdlab::ElementId>& base) {
  const auto n = s.carrier_size();
  std::vector<std::vector<gpdlab::ElementId>> perms_per_sort;
  std::vector<gpdlab::ElementId> perm(n);
  std::iota(perm.begin(), perm.end(), gpdlab::ElementId{0});
  std::set<gpdlab::ElementId> fixed(base.begin(), base.end());
  std::size_t count = 0;
  auto rec = [&](auto&& self, std::size_t sort) -> void {
    if (sort == s.sorts().size()) {
      if (gpdlab::is_automorphism(s, perm)) ++count;
      return;
    }
    const auto off = s.offset(sort);
    const auto size = s.sorts()[sort].size;
    std::vector<gpdlab::ElementId> local(size);
    std::iota(local.begin(), local.end(), static_cast<gpdlab::ElementId>(off));
    do {
      bool ok = true;
      for (std::size_t i = 0; i < size && ok; ++i) ok = !fixed.count(static_cast<gpdlab::ElementId>(off + i)) || local[i] == off + i;
      if (!ok) continue;
      std::copy(local.begin(), local.end(), perm.begin() + static_cast<std::ptrdiff_t>(off));
      self(self, sort + 1);
    } while (std::next_permutation(local.begin(), local.end()));
  };
  rec(rec, 0);
  return count;
}

}  // namespace oracle

namespace oracle {

/// The maps (u, x, v) -> (u, g_v x g_u^-1, v) on a standard groupoid, one
/// per choice of g_u for u != a (g_a = identity), written as permutations of
/// the plain encoding. These fix every object and every loop at a.
inline std::vector<std::vector<gpdlab::ElementId>> choice_family_maps(const FiniteGroup& grp, std::size_t n,
                                                                      std::size_t a) {
  const std::size_t k = grp.order();
  std::vector<std::vector<gpdlab::ElementId>> out;
  std::vector<std::size_t> choice(n, grp.identity());
  auto rec = [&](auto&& self, std::size_t u) -> void {
    if (u == n) {
      std::vector<gpdlab::ElementId> perm(n + n * n * k);
      for (std::size_t o = 0; o < n; ++o) perm[o] = static_cast<gpdlab::ElementId>(o);
      for (std::size_t s = 0; s < n; ++s)
        for (std::size_t t = 0; t < n; ++t)
          for (std::size_t x = 0; x < k; ++x) {
            const auto y = grp.mul(grp.mul(choice[t], x), grp.inv(choice[s]));
            perm[n + gpdlab::standard_morphism(n, k, s, x, t)] =
                static_cast<gpdlab::ElementId>(n + gpdlab::standard_morphism(n, k, s, y, t));
          }
      out.push_back(std::move(perm));
      return;
    }
    if (u == a) return self(self, u + 1);
    for (std::size_t g = 0; g < k; ++g) {
      choice[u] = g;
      self(self, u + 1);
    }
    choice[u] = grp.identity();
  };
  rec(rec, 0);
  return out;
}

}  // namespace oracle
