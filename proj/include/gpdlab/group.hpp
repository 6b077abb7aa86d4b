#pragma once

// Exact finite groups stored as full Cayley tables.

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gpdlab/errors.hpp"

namespace gpdlab {

inline constexpr std::size_t kMaxGroupOrder = 64;

using Table = std::vector<std::vector<std::size_t>>;
using Permutation = std::vector<std::size_t>;

class FiniteGroup;
FiniteGroup validate_group(Table table, std::size_t identity, std::vector<std::string> labels = {});

/// A finite group given by its multiplication table. `table()[i][j]` is the
/// index of g_i * g_j. Instances only come out of validate_group, so every
/// FiniteGroup satisfies the group axioms.
class FiniteGroup {
 public:
  FiniteGroup() : table_{{0}}, identity_(0), inverse_{0} {}

  std::size_t order() const noexcept { return table_.size(); }
  std::size_t identity() const noexcept { return identity_; }
  const Table& table() const noexcept { return table_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }

  std::size_t mul(std::size_t a, std::size_t b) const { return table_[a][b]; }
  std::size_t inv(std::size_t a) const { return inverse_[a]; }

  std::string label(std::size_t i) const {
    return i < labels_.size() ? labels_[i] : std::to_string(i);
  }

  bool commute(std::size_t a, std::size_t b) const { return mul(a, b) == mul(b, a); }

  bool is_abelian() const {
    for (std::size_t a = 0; a < order(); ++a)
      for (std::size_t b = a + 1; b < order(); ++b)
        if (!commute(a, b)) return false;
    return true;
  }

  std::size_t element_order(std::size_t x) const {
    std::size_t k = 1;
    for (std::size_t p = x; p != identity_; p = mul(p, x)) ++k;
    return k;
  }

  /// Sorted multiset of element orders; an isomorphism invariant.
  std::vector<std::size_t> order_profile() const {
    std::vector<std::size_t> out(order());
    for (std::size_t i = 0; i < order(); ++i) out[i] = element_order(i);
    std::sort(out.begin(), out.end());
    return out;
  }

  /// Least exponent e with x^e = 1 for all x.
  std::size_t exponent() const {
    std::size_t e = 1;
    for (std::size_t i = 0; i < order(); ++i) e = std::lcm(e, element_order(i));
    return e;
  }

  friend bool operator==(const FiniteGroup& a, const FiniteGroup& b) {
    return a.table_ == b.table_ && a.identity_ == b.identity_;
  }

 private:
  friend FiniteGroup validate_group(Table, std::size_t, std::vector<std::string>);

  Table table_;
  std::size_t identity_;
  std::vector<std::size_t> inverse_;
  std::vector<std::string> labels_;
};

/// Checks the group axioms and returns the group. Throws AxiomViolation with
/// kind "shape", "identity", "no-inverse", "latin-square" or "associativity"
/// and a counterexample.
inline FiniteGroup validate_group(Table table, std::size_t identity, std::vector<std::string> labels) {
  const std::size_t n = table.size();
  if (n == 0) throw AxiomViolation("shape", {});
  for (std::size_t i = 0; i < n; ++i) {
    if (table[i].size() != n) throw AxiomViolation("shape", {i});
    for (std::size_t j = 0; j < n; ++j)
      if (table[i][j] >= n) throw AxiomViolation("shape", {i, j});
  }
  if (identity >= n) throw AxiomViolation("identity", {identity});
  if (!labels.empty() && labels.size() != n) throw AxiomViolation("shape", {labels.size()});

  for (std::size_t x = 0; x < n; ++x)
    if (table[identity][x] != x || table[x][identity] != x) throw AxiomViolation("identity", {x});

  std::vector<std::size_t> inverse(n, n);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y)
      if (table[x][y] == identity && table[y][x] == identity) {
        inverse[x] = y;
        break;
      }
    if (inverse[x] == n) throw AxiomViolation("no-inverse", {x});
  }

  for (std::size_t i = 0; i < n; ++i) {
    std::vector<char> row(n, 0), col(n, 0);
    for (std::size_t j = 0; j < n; ++j) {
      if (row[table[i][j]]++) throw AxiomViolation("latin-square", {i, j});
      if (col[table[j][i]]++) throw AxiomViolation("latin-square", {j, i});
    }
  }

  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const std::size_t ab = table[a][b];
      for (std::size_t c = 0; c < n; ++c)
        if (table[ab][c] != table[a][table[b][c]]) throw AxiomViolation("associativity", {a, b, c});
    }

  FiniteGroup g;
  g.table_ = std::move(table);
  g.identity_ = identity;
  g.inverse_ = std::move(inverse);
  g.labels_ = std::move(labels);
  return g;
}

/// Builds the group formed by a set of permutations of {0..d-1} under
/// composition, (p*q)(x) = p(q(x)). Elements are sorted lexicographically, so
/// the identity permutation is always index 0. Throws AxiomViolation if the
/// set is not closed.
inline FiniteGroup group_from_permutations(std::vector<Permutation> perms) {
  std::sort(perms.begin(), perms.end());
  perms.erase(std::unique(perms.begin(), perms.end()), perms.end());
  if (perms.empty()) throw AxiomViolation("shape", {});
  std::map<Permutation, std::size_t> index;
  for (std::size_t i = 0; i < perms.size(); ++i) index.emplace(perms[i], i);
  const std::size_t d = perms.front().size();
  Permutation id(d);
  std::iota(id.begin(), id.end(), std::size_t{0});
  auto it = index.find(id);
  if (it == index.end()) throw AxiomViolation("identity", {});
  Table table(perms.size(), std::vector<std::size_t>(perms.size()));
  Permutation comp(d);
  for (std::size_t i = 0; i < perms.size(); ++i)
    for (std::size_t j = 0; j < perms.size(); ++j) {
      for (std::size_t x = 0; x < d; ++x) comp[x] = perms[i][perms[j][x]];
      auto c = index.find(comp);
      if (c == index.end()) throw AxiomViolation("closure", {i, j});
      table[i][j] = c->second;
    }
  return validate_group(std::move(table), it->second);
}

// ---------------------------------------------------------------------------
// Subgroups

struct Subgroup {
  FiniteGroup parent;
  std::vector<std::size_t> members;  // sorted

  std::size_t order() const noexcept { return members.size(); }
  bool contains(std::size_t x) const { return std::binary_search(members.begin(), members.end(), x); }
};

/// Throws AxiomViolation("subgroup-closure") if `members` is not a subgroup.
inline Subgroup make_subgroup(const FiniteGroup& g, std::vector<std::size_t> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  Subgroup s{g, std::move(members)};
  if (!s.contains(g.identity())) throw AxiomViolation("subgroup-closure", {g.identity()});
  for (auto a : s.members) {
    if (!s.contains(g.inv(a))) throw AxiomViolation("subgroup-closure", {a});
    for (auto b : s.members)
      if (!s.contains(g.mul(a, b))) throw AxiomViolation("subgroup-closure", {a, b});
  }
  return s;
}

inline Subgroup center(const FiniteGroup& g) {
  std::vector<std::size_t> z;
  for (std::size_t x = 0; x < g.order(); ++x) {
    bool central = true;
    for (std::size_t y = 0; y < g.order() && central; ++y) central = g.commute(x, y);
    if (central) z.push_back(x);
  }
  return make_subgroup(g, std::move(z));
}

inline bool is_normal(const Subgroup& s) {
  const auto& g = s.parent;
  for (std::size_t x = 0; x < g.order(); ++x)
    for (auto h : s.members)
      if (!s.contains(g.mul(g.mul(x, h), g.inv(x)))) return false;
  return true;
}

/// True iff every member of `s` commutes with every member of `t` (both in
/// the same parent group).
inline bool centralizes(const Subgroup& s, const Subgroup& t) {
  for (auto a : s.members)
    for (auto b : t.members)
      if (!s.parent.commute(a, b)) return false;
  return true;
}

/// The subgroup as a group in its own right; member k becomes element k.
inline FiniteGroup subgroup_as_group(const Subgroup& s) {
  std::map<std::size_t, std::size_t> pos;
  for (std::size_t i = 0; i < s.members.size(); ++i) pos[s.members[i]] = i;
  Table t(s.order(), std::vector<std::size_t>(s.order()));
  for (std::size_t i = 0; i < s.order(); ++i)
    for (std::size_t j = 0; j < s.order(); ++j)
      t[i][j] = pos.at(s.parent.mul(s.members[i], s.members[j]));
  std::vector<std::string> labels;
  for (auto m : s.members) labels.push_back(s.parent.label(m));
  return validate_group(std::move(t), pos.at(s.parent.identity()), std::move(labels));
}

// ---------------------------------------------------------------------------
// Isomorphism search

namespace detail {

/// Greedy generating set: repeatedly add the least element outside the
/// subgroup generated so far.
inline std::vector<std::size_t> greedy_generators(const FiniteGroup& g) {
  std::vector<std::size_t> gens;
  std::vector<char> in(g.order(), 0);
  in[g.identity()] = 1;
  std::vector<std::size_t> members{g.identity()};
  for (std::size_t x = 0; x < g.order(); ++x) {
    if (in[x]) continue;
    gens.push_back(x);
    // close under right multiplication by all generators
    members.assign(1, g.identity());
    std::fill(in.begin(), in.end(), 0);
    in[g.identity()] = 1;
    for (std::size_t k = 0; k < members.size(); ++k)
      for (auto s : gens) {
        auto v = g.mul(members[k], s);
        if (!in[v]) {
          in[v] = 1;
          members.push_back(v);
        }
      }
  }
  return gens;
}

/// Extends generator images to the generated subgroup. Returns false on any
/// inconsistency or loss of injectivity.
inline bool extend_images(const FiniteGroup& g, const FiniteGroup& h, const std::vector<std::size_t>& gens,
                          const std::vector<std::size_t>& images, std::vector<std::size_t>& map) {
  constexpr std::size_t unset = static_cast<std::size_t>(-1);
  map.assign(g.order(), unset);
  std::vector<char> used(h.order(), 0);
  map[g.identity()] = h.identity();
  used[h.identity()] = 1;
  std::vector<std::size_t> queue{g.identity()};
  for (std::size_t k = 0; k < queue.size(); ++k) {
    const auto u = queue[k];
    for (std::size_t i = 0; i < images.size(); ++i) {
      const auto v = g.mul(u, gens[i]);
      const auto w = h.mul(map[u], images[i]);
      if (map[v] == unset) {
        if (used[w]) return false;
        used[w] = 1;
        map[v] = w;
        queue.push_back(v);
      } else if (map[v] != w) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace detail

/// True iff `map` is a bijective homomorphism g -> h.
inline bool is_isomorphism(const FiniteGroup& g, const FiniteGroup& h, const std::vector<std::size_t>& map) {
  if (g.order() != h.order() || map.size() != g.order()) return false;
  std::vector<char> hit(h.order(), 0);
  for (auto m : map) {
    if (m >= h.order() || hit[m]) return false;
    hit[m] = 1;
  }
  for (std::size_t a = 0; a < g.order(); ++a)
    for (std::size_t b = 0; b < g.order(); ++b)
      if (map[g.mul(a, b)] != h.mul(map[a], map[b])) return false;
  return true;
}

/// Finds an isomorphism g -> h by backtracking over images of a greedy
/// generating set of g, candidates tried in increasing index among elements
/// of matching order. The result is the one with the lexicographically least
/// sequence of generator images. Throws OrderMismatch if |g| != |h|.
inline std::optional<std::vector<std::size_t>> isomorphism_search(const FiniteGroup& g, const FiniteGroup& h) {
  if (g.order() != h.order()) throw OrderMismatch(g.order(), h.order());
  if (g.order_profile() != h.order_profile()) return std::nullopt;

  const auto gens = detail::greedy_generators(g);
  std::vector<std::size_t> gen_order(gens.size());
  for (std::size_t i = 0; i < gens.size(); ++i) gen_order[i] = g.element_order(gens[i]);
  std::vector<std::size_t> h_order(h.order());
  for (std::size_t i = 0; i < h.order(); ++i) h_order[i] = h.element_order(i);

  std::vector<std::size_t> images;
  std::vector<std::size_t> map;
  std::optional<std::vector<std::size_t>> result;

  auto search = [&](auto&& self, std::size_t depth) -> bool {
    if (depth == gens.size()) {
      if (!detail::extend_images(g, h, gens, images, map)) return false;
      if (!is_isomorphism(g, h, map)) return false;
      result = map;
      return true;
    }
    for (std::size_t c = 0; c < h.order(); ++c) {
      if (h_order[c] != gen_order[depth]) continue;
      images.push_back(c);
      if (detail::extend_images(g, h, std::vector<std::size_t>(gens.begin(), gens.begin() + depth + 1), images,
                                map) &&
          self(self, depth + 1))
        return true;
      images.pop_back();
    }
    return false;
  };
  search(search, 0);
  return result;
}

inline bool isomorphic(const FiniteGroup& g, const FiniteGroup& h) {
  return g.order() == h.order() && isomorphism_search(g, h).has_value();
}

// ---------------------------------------------------------------------------
// Actions

/// A left action of `group` on {0..domain-1}: act[g][x].
struct GroupAction {
  FiniteGroup group;
  std::size_t domain = 0;
  Table act;

  std::size_t apply(std::size_t g, std::size_t x) const { return act[g][x]; }

  std::vector<std::size_t> orbit(std::size_t x) const {
    std::vector<std::size_t> out;
    for (std::size_t g = 0; g < group.order(); ++g) out.push_back(act[g][x]);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  std::vector<std::size_t> stabilizer(std::size_t x) const {
    std::vector<std::size_t> out;
    for (std::size_t g = 0; g < group.order(); ++g)
      if (act[g][x] == x) out.push_back(g);
    return out;
  }

  bool is_transitive() const { return domain > 0 && orbit(0).size() == domain; }

  bool is_regular() const {
    if (!is_transitive()) return false;
    for (std::size_t x = 0; x < domain; ++x)
      if (stabilizer(x).size() != 1) return false;
    return true;
  }

  /// Identity acts trivially and act(g*h, x) = act(g, act(h, x)).
  bool is_valid() const {
    if (act.size() != group.order()) return false;
    for (std::size_t x = 0; x < domain; ++x)
      if (act[group.identity()][x] != x) return false;
    for (std::size_t g = 0; g < group.order(); ++g)
      for (std::size_t h = 0; h < group.order(); ++h)
        for (std::size_t x = 0; x < domain; ++x)
          if (act[group.mul(g, h)][x] != act[g][act[h][x]]) return false;
    return true;
  }
};

inline GroupAction regular_action(const FiniteGroup& g) {
  GroupAction a{g, g.order(), g.table()};
  return a;
}

// ---------------------------------------------------------------------------
// Standard constructors

namespace detail {
inline void check_order(std::size_t n, const std::string& what) {
  if (n == 0 || n > kMaxGroupOrder)
    throw UnsupportedSize(what + " has order " + std::to_string(n) + ", supported range is 1.." +
                          std::to_string(kMaxGroupOrder));
}
}  // namespace detail

inline FiniteGroup cyclic(std::size_t n) {
  detail::check_order(n, "cyclic group");
  Table t(n, std::vector<std::size_t>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) t[i][j] = (i + j) % n;
  return validate_group(std::move(t), 0);
}

inline FiniteGroup symmetric(std::size_t n) {
  if (n == 0) throw UnsupportedSize("symmetric group on 0 points");
  std::size_t fact = 1;
  for (std::size_t k = 2; k <= n; ++k) fact *= k;
  detail::check_order(fact, "symmetric group");
  std::vector<Permutation> perms;
  Permutation p(n);
  std::iota(p.begin(), p.end(), std::size_t{0});
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  auto g = group_from_permutations(perms);
  std::vector<std::string> labels;
  for (const auto& q : perms) {
    std::string s;
    for (auto v : q) s += std::to_string(v + 1);
    labels.push_back(s);
  }
  return validate_group(g.table(), g.identity(), std::move(labels));
}

/// Dihedral group of order 2n: index k is r^k, index n+k is s r^k.
inline FiniteGroup dihedral(std::size_t n) {
  if (n == 0) throw UnsupportedSize("dihedral group of degree 0");
  detail::check_order(2 * n, "dihedral group");
  const std::size_t m = 2 * n;
  Table t(m, std::vector<std::size_t>(m));
  for (std::size_t x = 0; x < m; ++x)
    for (std::size_t y = 0; y < m; ++y) {
      const bool xs = x >= n, ys = y >= n;
      const std::size_t a = x % n, b = y % n;
      if (!xs && !ys) t[x][y] = (a + b) % n;
      else if (!xs && ys) t[x][y] = n + (b + n - a) % n;
      else if (xs && !ys) t[x][y] = n + (a + b) % n;
      else t[x][y] = (b + n - a) % n;
    }
  std::vector<std::string> labels;
  for (std::size_t k = 0; k < m; ++k) labels.push_back((k >= n ? "sr" : "r") + std::to_string(k % n));
  return validate_group(std::move(t), 0, std::move(labels));
}

/// Quaternion group: indices 0..7 are 1,-1,i,-i,j,-j,k,-k.
inline FiniteGroup quaternion8() {
  // unit products: basis 0=1,1=i,2=j,3=k ; result (sign, basis)
  static constexpr int sign[4][4] = {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};
  static constexpr int basis[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  Table t(8, std::vector<std::size_t>(8));
  for (std::size_t x = 0; x < 8; ++x)
    for (std::size_t y = 0; y < 8; ++y) {
      const std::size_t bx = x / 2, by = y / 2;
      int s = sign[bx][by] * ((x % 2) ? -1 : 1) * ((y % 2) ? -1 : 1);
      t[x][y] = 2 * static_cast<std::size_t>(basis[bx][by]) + (s < 0 ? 1 : 0);
    }
  return validate_group(std::move(t), 0, {"1", "-1", "i", "-i", "j", "-j", "k", "-k"});
}

/// Direct product; element (a, b) has index a * |h| + b.
inline FiniteGroup direct_product(const FiniteGroup& g, const FiniteGroup& h) {
  const std::size_t n = g.order() * h.order();
  detail::check_order(n, "direct product");
  Table t(n, std::vector<std::size_t>(n));
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      t[x][y] = g.mul(x / h.order(), y / h.order()) * h.order() + h.mul(x % h.order(), y % h.order());
  std::vector<std::string> labels;
  for (std::size_t x = 0; x < n; ++x)
    labels.push_back("(" + g.label(x / h.order()) + "," + h.label(x % h.order()) + ")");
  return validate_group(std::move(t), g.identity() * h.order() + h.identity(), std::move(labels));
}

/// Parses `cyclic:n`, `symmetric:n`, `dihedral:n`, `quaternion8`, `trivial`
/// and `product:<spec>,<spec>` (split at the first comma).
inline FiniteGroup make_standard_group(std::string_view spec) {
  auto number = [&](std::string_view s) -> std::size_t {
    if (s.empty() || s.size() > 6) throw InputError("bad group parameter in '" + std::string(spec) + "'");
    std::size_t v = 0;
    for (char c : s) {
      if (c < '0' || c > '9') throw InputError("bad group parameter in '" + std::string(spec) + "'");
      v = v * 10 + static_cast<std::size_t>(c - '0');
    }
    return v;
  };
  const auto colon = spec.find(':');
  const auto kind = spec.substr(0, colon);
  const auto arg = colon == std::string_view::npos ? std::string_view{} : spec.substr(colon + 1);
  if (kind == "trivial") return cyclic(1);
  if (kind == "quaternion8") return quaternion8();
  if (kind == "cyclic") return cyclic(number(arg));
  if (kind == "symmetric") return symmetric(number(arg));
  if (kind == "dihedral") return dihedral(number(arg));
  if (kind == "product") {
    const auto comma = arg.find(',');
    if (comma == std::string_view::npos) throw InputError("product needs two factors: '" + std::string(spec) + "'");
    return direct_product(make_standard_group(arg.substr(0, comma)), make_standard_group(arg.substr(comma + 1)));
  }
  throw InputError("unknown group kind '" + std::string(kind) + "'");
}

}  // namespace gpdlab
