#pragma once

// JSON reading and writing for groups, groupoids, structures, witnesses and
// directed systems. Writers emit keys in a fixed order so equal values give
// equal bytes. Readers throw InputError on anything malformed.

#include <array>
#include <cstddef>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "gpdlab/limits.hpp"
#include "gpdlab/report.hpp"
#include "gpdlab/structure.hpp"
#include "gpdlab/witness.hpp"

namespace gpdlab {

namespace detail {

inline json parse_json(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw InputError(what + ": " + e.what());
  }
}

template <class T>
T get_field(const json& j, const char* key, const std::string& what) {
  if (!j.is_object() || !j.contains(key)) throw InputError(what + ": missing '" + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw InputError(what + ": field '" + key + "' has the wrong type");
  }
}

}  // namespace detail

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return detail::parse_json(os.str(), path);
}

inline void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << j.dump(2) << "\n";
}

// ---------------------------------------------------------------------------
// groups

inline json group_to_json(const FiniteGroup& g) {
  json j;
  j["order"] = g.order();
  j["identity"] = g.identity();
  j["table"] = g.table();
  if (!g.labels().empty()) j["labels"] = g.labels();
  return j;
}

inline FiniteGroup group_from_json(const json& j) {
  const auto order = detail::get_field<std::size_t>(j, "order", "group");
  auto table = detail::get_field<Table>(j, "table", "group");
  if (table.size() != order) throw InputError("group: table has " + std::to_string(table.size()) + " rows, order is " +
                                              std::to_string(order));
  std::vector<std::string> labels;
  if (j.contains("labels")) labels = detail::get_field<std::vector<std::string>>(j, "labels", "group");
  return validate_group(std::move(table), detail::get_field<std::size_t>(j, "identity", "group"), std::move(labels));
}

/// A named group (see make_standard_group) or `file:path` to a group JSON.
inline FiniteGroup load_group(const std::string& spec) {
  if (spec.rfind("file:", 0) == 0) return group_from_json(read_json_file(spec.substr(5)));
  return make_standard_group(spec);
}

/// Group refs inside other documents: a spec string or an inline group.
inline FiniteGroup group_from_ref(const json& ref) {
  if (ref.is_string()) return load_group(ref.get<std::string>());
  return group_from_json(ref);
}

// ---------------------------------------------------------------------------
// groupoids

inline json groupoid_to_json(const FiniteGroupoid& gpd) {
  json j;
  j["objects"] = gpd.object_count();
  json mors = json::array();
  for (std::size_t m = 0; m < gpd.morphism_count(); ++m)
    mors.push_back(json{{"id", m}, {"init", gpd.init(m)}, {"ter", gpd.ter(m)}});
  j["morphisms"] = mors;
  j["composition"] = gpd.composition_triples();
  std::vector<std::size_t> ids;
  for (std::size_t o = 0; o < gpd.object_count(); ++o) ids.push_back(gpd.identity(o));
  j["identities"] = ids;
  return j;
}

/// Either the explicit listing or {"standard": {"group": ref, "objects": n}}.
inline FiniteGroupoid groupoid_from_json(const json& j) {
  if (j.is_object() && j.contains("standard")) {
    const auto& st = j["standard"];
    if (!st.is_object() || !st.contains("group")) throw InputError("groupoid: standard needs a group");
    return build_standard_groupoid(group_from_ref(st["group"]), detail::get_field<std::size_t>(st, "objects", "groupoid"));
  }
  RawGroupoid raw;
  raw.objects = detail::get_field<std::size_t>(j, "objects", "groupoid");
  const auto mors = detail::get_field<json>(j, "morphisms", "groupoid");
  if (!mors.is_array()) throw InputError("groupoid: morphisms must be an array");
  raw.init.assign(mors.size(), 0);
  raw.ter.assign(mors.size(), 0);
  std::vector<char> seen(mors.size(), 0);
  for (const auto& m : mors) {
    const auto id = detail::get_field<std::size_t>(m, "id", "morphism");
    if (id >= mors.size() || seen[id]) throw InputError("groupoid: morphism ids must be 0..n-1 without repeats");
    seen[id] = 1;
    raw.init[id] = detail::get_field<std::size_t>(m, "init", "morphism");
    raw.ter[id] = detail::get_field<std::size_t>(m, "ter", "morphism");
  }
  raw.composition = detail::get_field<std::vector<std::array<std::size_t, 3>>>(j, "composition", "groupoid");
  raw.identities = detail::get_field<std::vector<std::size_t>>(j, "identities", "groupoid");
  return validate_groupoid(raw);
}

// ---------------------------------------------------------------------------
// structures

inline json structure_to_json(const MultiSortedStructure& s) {
  const auto& sorts = s.sorts();
  auto names = [&](const std::vector<std::size_t>& v) {
    std::vector<std::string> out;
    for (auto i : v) out.push_back(sorts[i].name);
    return out;
  };
  json j;
  j["sorts"] = json::array();
  for (const auto& so : sorts) j["sorts"].push_back(json{{"name", so.name}, {"size", so.size}});
  j["functions"] = json::array();
  for (const auto& f : s.functions())
    j["functions"].push_back(
        json{{"name", f.name}, {"domain", names(f.domain)}, {"codomain", sorts[f.codomain].name}, {"table", f.table}});
  j["relations"] = json::array();
  for (const auto& r : s.relations())
    j["relations"].push_back(json{{"name", r.name}, {"sorts", names(r.sorts)}, {"tuples", r.tuples}});
  j["constants"] = json::array();
  for (const auto& c : s.constants())
    j["constants"].push_back(json{{"name", c.name}, {"sort", sorts[c.sort].name}, {"index", c.index}});
  return j;
}

inline MultiSortedStructure structure_from_json(const json& j) {
  const auto sj = detail::get_field<json>(j, "sorts", "structure");
  if (!sj.is_array()) throw InputError("structure: sorts must be an array");
  std::vector<Sort> sorts;
  for (const auto& x : sj)
    sorts.push_back({detail::get_field<std::string>(x, "name", "sort"), detail::get_field<std::size_t>(x, "size", "sort")});
  auto sort_of = [&](const std::string& name) {
    for (std::size_t i = 0; i < sorts.size(); ++i)
      if (sorts[i].name == name) return i;
    throw InputError("structure: unknown sort '" + name + "'");
  };
  auto sorts_of = [&](const std::vector<std::string>& v) {
    std::vector<std::size_t> out;
    for (const auto& n : v) out.push_back(sort_of(n));
    return out;
  };
  auto array_field = [&](const char* key) {
    if (!j.contains(key)) return json::array();
    const auto a = j[key];
    if (!a.is_array()) throw InputError(std::string("structure: ") + key + " must be an array");
    return a;
  };
  std::vector<Function> functions;
  for (const auto& x : array_field("functions"))
    functions.push_back({detail::get_field<std::string>(x, "name", "function"),
                         sorts_of(detail::get_field<std::vector<std::string>>(x, "domain", "function")),
                         sort_of(detail::get_field<std::string>(x, "codomain", "function")),
                         detail::get_field<std::vector<std::size_t>>(x, "table", "function")});
  std::vector<Relation> relations;
  for (const auto& x : array_field("relations"))
    relations.push_back({detail::get_field<std::string>(x, "name", "relation"),
                         sorts_of(detail::get_field<std::vector<std::string>>(x, "sorts", "relation")),
                         detail::get_field<std::vector<std::vector<std::size_t>>>(x, "tuples", "relation")});
  std::vector<Constant> constants;
  for (const auto& x : array_field("constants"))
    constants.push_back({detail::get_field<std::string>(x, "name", "constant"),
                         sort_of(detail::get_field<std::string>(x, "sort", "constant")),
                         detail::get_field<std::size_t>(x, "index", "constant")});
  return MultiSortedStructure(std::move(sorts), std::move(functions), std::move(relations), std::move(constants));
}

inline json automorphism_group_to_json(const MultiSortedStructure& s, const AutomorphismGroup& g) {
  json base = json::array();
  for (auto e : g.base) base.push_back(s.describe(e));
  return json{{"base", base}, {"order", g.order()}, {"permutations", g.members}};
}

// ---------------------------------------------------------------------------
// witnesses: elements are written as [sort name, index]

inline json element_to_json(const MultiSortedStructure& s, ElementId e) {
  const auto el = s.element(e);
  return json::array({s.sorts()[el.sort].name, el.index});
}

inline ElementId element_from_json(const MultiSortedStructure& s, const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_string() || !j[1].is_number_unsigned())
    throw InputError("element must be [sort, index]");
  const auto sort = s.find_sort(j[0].get<std::string>());
  if (!sort) throw InputError("unknown sort '" + j[0].get<std::string>() + "'");
  return s.id(Element{*sort, j[1].get<std::size_t>()});
}

inline json tuple_to_json(const MultiSortedStructure& s, const Tuple& t) {
  json out = json::array();
  for (auto e : t) out.push_back(element_to_json(s, e));
  return out;
}

inline Tuple tuple_from_json(const MultiSortedStructure& s, const json& j) {
  if (!j.is_array()) throw InputError("tuple must be an array of elements");
  Tuple t;
  for (const auto& e : j) t.push_back(element_from_json(s, e));
  return t;
}

/// The structure is not embedded; the reader takes it separately.
inline json witness_to_json(const WitnessInstance& w) {
  const auto& s = w.structure;
  json j;
  j["objects"] = json::array();
  for (const auto& t : w.objects) j["objects"].push_back(tuple_to_json(s, t));
  j["f01"] = tuple_to_json(s, w.f01);
  j["f12"] = tuple_to_json(s, w.f12);
  j["f02"] = tuple_to_json(s, w.f02);
  j["closures"] = json::array();
  for (const auto& c : w.closures) j["closures"].push_back(tuple_to_json(s, c));
  return j;
}

inline WitnessInstance witness_from_json(MultiSortedStructure s, const json& j) {
  WitnessInstance w;
  const auto objs = detail::get_field<json>(j, "objects", "witness");
  if (!objs.is_array() || objs.size() != 3) throw InputError("witness: need exactly three objects");
  for (std::size_t i = 0; i < 3; ++i) w.objects[i] = tuple_from_json(s, objs[i]);
  w.f01 = tuple_from_json(s, detail::get_field<json>(j, "f01", "witness"));
  w.f12 = tuple_from_json(s, detail::get_field<json>(j, "f12", "witness"));
  w.f02 = tuple_from_json(s, detail::get_field<json>(j, "f02", "witness"));
  if (j.contains("closures")) {
    const auto& cl = j["closures"];
    if (!cl.is_array() || cl.size() != 3) throw InputError("witness: closures must list three tuples");
    for (std::size_t i = 0; i < 3; ++i) w.closures[i] = tuple_from_json(s, cl[i]);
  }
  w.structure = std::move(s);
  return w;
}

// ---------------------------------------------------------------------------
// directed systems

inline json system_to_json(const DirectedSystem& sys) {
  json j;
  j["indices"] = json::array();
  for (std::size_t i = 0; i < sys.size(); ++i) j["indices"].push_back(sys.name(i));
  j["order"] = json::array();
  j["transitions"] = json::array();
  for (std::size_t f = 0; f < sys.size(); ++f)
    for (std::size_t g = 0; g < sys.size(); ++g)
      if (f != g && sys.leq(f, g)) {
        j["order"].push_back({f, g});
        j["transitions"].push_back(json{{"from", g}, {"to", f}, {"map", sys.transition(f, g)}});
      }
  j["groups"] = json::array();
  for (std::size_t i = 0; i < sys.size(); ++i) j["groups"].push_back(group_to_json(sys.group(i)));
  return j;
}

inline DirectedSystem system_from_json(const json& j) {
  RawSystem raw;
  raw.names = detail::get_field<std::vector<std::string>>(j, "indices", "system");
  const auto groups = detail::get_field<json>(j, "groups", "system");
  if (!groups.is_array() || groups.size() != raw.names.size())
    throw InputError("system: one group per index expected");
  for (const auto& g : groups) raw.groups.push_back(group_from_ref(g));
  raw.order = detail::get_field<std::vector<std::pair<std::size_t, std::size_t>>>(j, "order", "system");
  const auto tr = detail::get_field<json>(j, "transitions", "system");
  if (!tr.is_array()) throw InputError("system: transitions must be an array");
  for (const auto& t : tr) {
    const auto key = std::make_pair(detail::get_field<std::size_t>(t, "to", "transition"),
                                    detail::get_field<std::size_t>(t, "from", "transition"));
    if (!raw.transitions.emplace(key, detail::get_field<std::vector<std::size_t>>(t, "map", "transition")).second)
      throw InputError("system: duplicate transition");
  }
  return validate_system(raw);
}

}  // namespace gpdlab
