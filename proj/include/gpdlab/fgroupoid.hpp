#pragma once

// Checks on composition of Y-set elements, on path equivalence and on the
// quotient groupoid built from 2-step paths.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "gpdlab/extended.hpp"
#include "gpdlab/report.hpp"
#include "gpdlab/section3.hpp"

namespace gpdlab {

inline constexpr const char* kFGroupoidSuite = "fgroupoid";

/// All directed paths of a given length, or an evenly spaced sample of at
/// most `limit` of them. Index i is decoded in mixed radix: start object,
/// then per step (next-object offset, Y member).
class PathFamily {
 public:
  PathFamily(std::size_t objects, std::size_t y_size, std::size_t length, std::size_t limit)
      : n_(objects), y_(y_size), len_(length) {
    total_ = n_;
    for (std::size_t i = 0; i < len_; ++i) total_ *= (n_ - 1) * y_;
    stride_ = limit == 0 || total_ <= limit ? 1 : (total_ + limit - 1) / limit;
  }

  std::size_t total() const noexcept { return total_; }
  bool exhaustive() const noexcept { return stride_ == 1; }

  template <class Visit>
  void for_each(Visit&& visit) const {
    for (std::size_t i = 0; i < total_; i += stride_) visit(decode(i));
  }

  DirectedPath decode(std::size_t i) const {
    DirectedPath q;
    q.objects.push_back(i % n_);
    i /= n_;
    for (std::size_t k = 0; k < len_; ++k) {
      const auto off = i % (n_ - 1);
      i /= n_ - 1;
      const auto member = i % y_;
      i /= y_;
      const auto prev = q.objects.back();
      q.objects.push_back(off < prev ? off : off + 1);
      q.steps.push_back(member);
    }
    return q;
  }

 private:
  std::size_t n_, y_, len_, total_ = 0, stride_ = 1;
};

namespace detail {

inline json path_json(const DirectedPath& q) { return json{{"objects", q.objects}, {"steps", q.steps}}; }

/// 1 equivalent, 0 not, nullopt when no object is free of both paths.
inline std::optional<bool> try_equivalent(const ExtendedConstruction& ec, const DirectedPath& q,
                                          const DirectedPath& r) {
  if (ec.probes(q, r).empty()) return std::nullopt;
  return ec.equivalent(q, r);
}

}  // namespace detail

inline std::vector<ClaimResult> verify_fgroupoid(const GroupoidModel& m, SearchBudget budget = {}) {
  const std::size_t n = m.objects();
  if (n < 4) throw InputError("the path construction needs at least 4 objects");
  std::vector<ClaimResult> out;
  const auto& gpd = m.groupoid();

  std::unique_ptr<ExtendedConstruction> ec;
  out.push_back(run_claim("composition-well-defined", kFGroupoidSuite,
                          "the composite of Y-set elements does not depend on the decomposition",
                          [&](ClaimResult& c) {
    if (!detail::vertex_groups_abelian(gpd)) throw NonAbelianVertex(0);
    ec = std::make_unique<ExtendedConstruction>(m, budget);
    std::size_t triples = 0;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t d = 0; d < n; ++d)
          if (a != b && b != d && a != d) {
            ec->table(a, b, d);
            ++triples;
          }
    c.details["triples"] = triples;
    c.details["y size"] = ec->y_size();
  }));
  if (!ec) {
    for (const char* id : {"composition-extends-groupoid", "unique-divisors", "path-equivalence-relation",
                           "path-reduction", "f-groupoid-valid", "hom-size-equals-y", "vertex-group-is-f",
                           "injection-preserves-composition", "vertex-group-contains-g"})
      out.push_back(skipped_claim(id, kFGroupoidSuite, "", "composition on Y-sets unavailable"));
    return out;
  }
  const std::size_t k = ec->y_size();

  out.push_back(run_claim("composition-extends-groupoid", kFGroupoidSuite,
                          "on groupoid morphisms the Y-set composite is the groupoid composite",
                          [&](ClaimResult& c) {
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t d = 0; d < n; ++d) {
          if (a == b || b == d || a == d) continue;
          for (auto g : gpd.hom(a, b))
            for (auto h : gpd.hom(b, d)) {
              const auto gi = ec->pair(a, b).y.index_of(m.morphism_tuple(g));
              const auto hi = ec->pair(b, d).y.index_of(m.morphism_tuple(h));
              const auto want = ec->pair(a, d).y.index_of(m.morphism_tuple(gpd.then(g, h)));
              if (ec->compose(a, b, d, hi, gi) != want) {
                c.status = Status::fail;
                c.witness = json{{"objects", {a, b, d}}, {"g", gi}, {"h", hi}};
                return;
              }
            }
        }
  }));

  out.push_back(run_claim("unique-divisors", kFGroupoidSuite,
                          "each composite has exactly one left and one right divisor", [&](ClaimResult& c) {
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t d = 0; d < n; ++d) {
          if (a == b || b == d || a == d) continue;
          const auto& t = ec->table(a, b, d);
          for (std::size_t f = 0; f < k; ++f)
            for (std::size_t x = 0; x < k; ++x) {
              std::size_t left = 0, right = 0;
              for (std::size_t y = 0; y < k; ++y) {
                left += t[y][x] == f;   // y.x = f, x in Y(a,b)
                right += t[x][y] == f;  // x.y = f, x in Y(b,d)
              }
              if (left != 1 || right != 1) {
                c.status = Status::fail;
                c.witness = json{{"objects", {a, b, d}}, {"f", f}, {"given", x}, {"left", left}, {"right", right}};
                return;
              }
            }
        }
  }));

  out.push_back(run_claim("path-equivalence-relation", kFGroupoidSuite,
                          "equivalence of 2-step paths is an equivalence relation with |Y| classes",
                          [&](ClaimResult& c) {
    c.surrogates.push_back("probe independence checked over every free object and Y member");
    std::size_t pairs = 0, unprobeable = 0;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        std::vector<DirectedPath> paths;
        for (std::size_t mid = 0; mid < n; ++mid)
          if (mid != a && mid != b)
            for (std::size_t x = 0; x < k; ++x)
              for (std::size_t y = 0; y < k; ++y) paths.push_back({{a, mid, b}, {x, y}});
        const std::size_t p = paths.size();
        if (p * p > budget.max_paths) throw BudgetExceeded("2-step path pairs", p * p, budget.max_paths);
        // 0 no, 1 yes, 2 unknown
        std::vector<std::vector<char>> rel(p, std::vector<char>(p, 2));
        for (std::size_t i = 0; i < p; ++i)
          for (std::size_t j = 0; j < p; ++j) {
            const auto e = detail::try_equivalent(*ec, paths[i], paths[j]);
            if (e) rel[i][j] = *e ? 1 : 0;
            else ++unprobeable;
            ++pairs;
          }
        for (std::size_t i = 0; i < p; ++i) {
          if (rel[i][i] != 1) throw ClaimFailure("path-equivalence-relation", "not reflexive");
          for (std::size_t j = 0; j < p; ++j) {
            if (rel[i][j] != rel[j][i]) {
              c.status = Status::fail;
              c.witness = json{{"not symmetric", {detail::path_json(paths[i]), detail::path_json(paths[j])}}};
              return;
            }
            if (rel[i][j] != 1) continue;
            for (std::size_t l = 0; l < p; ++l)
              if (rel[i][l] != 2 && rel[j][l] != 2 && rel[i][l] != rel[j][l]) {
                c.status = Status::fail;
                c.witness = json{{"not transitive",
                                  {detail::path_json(paths[i]), detail::path_json(paths[j]), detail::path_json(paths[l])}}};
                return;
              }
          }
        }
        // classes through paths with the canonical middle
        std::vector<char> seen(p, 0);
        std::size_t classes = 0;
        for (std::size_t i = 0; i < p; ++i) {
          if (paths[i].objects[1] != ec->middle(a, b) || seen[i]) continue;
          ++classes;
          for (std::size_t j = 0; j < p; ++j)
            if (rel[i][j] == 1) seen[j] = 1;
        }
        if (classes != k) {
          c.status = Status::fail;
          c.witness = json{{"endpoints", {a, b}}, {"classes", classes}, {"y size", k}};
          return;
        }
      }
    c.details["pairs"] = pairs;
    c.details["unprobeable pairs"] = unprobeable;
    if (unprobeable) {
      c.status = Status::surrogate_pass;
      c.surrogates.push_back("pairs of paths covering every object have no probe and are not compared");
    }
  }));

  out.push_back(run_claim("path-reduction", kFGroupoidSuite,
                          "every path of 1 to 4 steps is equivalent to its reduced 2-step path",
                          [&](ClaimResult& c) {
    std::size_t checked = 0, unprobeable = 0;
    bool sampled = false;
    json per_length = json::object();
    for (std::size_t len = 1; len <= 4; ++len) {
      PathFamily fam(n, k, len, budget.max_paths);
      sampled = sampled || !fam.exhaustive();
      std::size_t here = 0;
      std::optional<json> bad;
      fam.for_each([&](const DirectedPath& q) {
        if (bad) return;
        const auto r = ec->reduce(q);
        if (r.length() != 2 || r.source() != q.source() || r.target() != q.target()) {
          bad = json{{"path", detail::path_json(q)}, {"reduced", detail::path_json(r)}};
          return;
        }
        auto verdict = detail::try_equivalent(*ec, q, r);
        if (!verdict) {
          // compare through a 2-step path whose middle already lies on q
          for (std::size_t i = 1; i + 1 < q.objects.size() && !verdict; ++i) {
            const auto mid = q.objects[i];
            if (mid == q.source() || mid == q.target()) continue;
            const auto r2 = ec->reduce(q, mid);
            const auto v1 = detail::try_equivalent(*ec, q, r2);
            const auto v2 = detail::try_equivalent(*ec, r2, r);
            if (v1 && v2) verdict = *v1 && *v2;
          }
        }
        if (!verdict) {
          ++unprobeable;
          return;
        }
        if (!*verdict) bad = json{{"path", detail::path_json(q)}, {"reduced", detail::path_json(r)}};
        ++here;
      });
      if (bad) {
        c.status = Status::fail;
        c.witness = *bad;
        return;
      }
      per_length[std::to_string(len)] = here;
      checked += here;
    }
    c.details["checked"] = per_length;
    c.details["unprobeable"] = unprobeable;
    c.details["exhaustive"] = !sampled;
    if (unprobeable) {
      c.status = Status::surrogate_pass;
      c.surrogates.push_back("paths through every object have no probe and are not compared");
    }
    if (sampled) {
      c.status = Status::surrogate_pass;
      c.surrogates.push_back("evenly spaced sample of the paths of each length");
    }
  }));

  std::optional<ExtendedGroupoid> eg;
  out.push_back(run_claim("f-groupoid-valid", kFGroupoidSuite,
                          "2-step paths modulo equivalence form a groupoid under concatenation",
                          [&](ClaimResult& c) {
    eg = build_extended_groupoid(*ec);
    c.details["morphisms"] = eg->groupoid.morphism_count();
  }));
  if (!eg) {
    for (const char* id : {"hom-size-equals-y", "vertex-group-is-f", "injection-preserves-composition",
                           "vertex-group-contains-g"})
      out.push_back(skipped_claim(id, kFGroupoidSuite, "", "quotient groupoid unavailable"));
    return out;
  }

  out.push_back(run_claim("hom-size-equals-y", kFGroupoidSuite, "each hom-set of the quotient has |Y| morphisms",
                          [&](ClaimResult& c) {
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        if (eg->groupoid.hom(a, b).size() != k) {
          c.status = Status::fail;
          c.witness = json{{"pair", {a, b}}, {"size", eg->groupoid.hom(a, b).size()}};
          return;
        }
    c.details["hom size"] = k;
  }));

  out.push_back(run_claim("vertex-group-is-f", kFGroupoidSuite, "each vertex group of the quotient is isomorphic to F",
                          [&](ClaimResult& c) {
    for (std::size_t a = 0; a < n; ++a) {
      const auto v = vertex_group(eg->groupoid, a);
      const auto& F = ec->pair(a, a == 0 ? 1 : 0).f.group();
      if (!isomorphic(v.group, F)) {
        c.status = Status::fail;
        c.witness = json{{"object", a}, {"vertex order", v.group.order()}, {"f order", F.order()}};
        return;
      }
    }
    const auto v0 = vertex_group(eg->groupoid, 0).group;
    c.details["order"] = v0.order();
    c.details["abelian"] = v0.is_abelian();
  }));

  out.push_back(run_claim("injection-preserves-composition", kFGroupoidSuite,
                          "groupoid morphisms embed into the quotient compatibly with composition",
                          [&](ClaimResult& c) {
    std::vector<std::size_t> img(gpd.morphism_count());
    for (std::size_t f = 0; f < img.size(); ++f) img[f] = inject(*ec, *eg, f);
    auto sorted = img;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw ClaimFailure("injection-preserves-composition", "two morphisms have the same image");
    std::size_t pairs = 0;
    for (const auto& [f, h, fh] : gpd.composition_triples()) {
      if (eg->groupoid.then(img[f], img[h]) != img[fh]) {
        c.status = Status::fail;
        c.witness = json{{"f", f}, {"h", h}};
        return;
      }
      ++pairs;
    }
    c.details["composable pairs"] = pairs;
  }));

  out.push_back(run_claim("vertex-group-contains-g", kFGroupoidSuite,
                          "the groupoid vertex group sits inside the quotient vertex group",
                          [&](ClaimResult& c) {
    const auto v = vertex_group(eg->groupoid, 0);
    std::vector<std::size_t> members;
    for (auto loop : gpd.hom(0, 0)) members.push_back(v.position(inject(*ec, *eg, loop)));
    const auto sub = make_subgroup(v.group, members);
    c.details["g order"] = sub.order();
    c.details["proper"] = sub.order() < v.group.order();
    const auto z = center(v.group);
    const bool central = std::all_of(sub.members.begin(), sub.members.end(), [&](std::size_t x) { return z.contains(x); });
    c.details["central"] = central;
    if (!central) {
      c.status = Status::fail;
      c.witness = json{{"why", "groupoid loops are not central in the quotient vertex group"}};
    }
  }));
  return out;
}

}  // namespace gpdlab
