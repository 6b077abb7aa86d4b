#pragma once

// Command-line front end: build, verify, report. Kept in a header so the
// tests can drive run_cli without spawning processes.

#include <cstddef>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gpdlab/gpdlab.hpp"

namespace gpdlab::cli {

enum ExitCode : int { kPass = 0, kClaimFailure = 1, kInputError = 2, kBudget = 3 };

inline constexpr std::size_t kMaxGroupOrder = 8;
inline constexpr std::size_t kMinObjects = 2;
inline constexpr std::size_t kMaxObjects = 6;
inline constexpr std::size_t kMaxCarrier = 300;

inline const std::vector<std::string>& all_suites() {
  static const std::vector<std::string> s{"section2", "section3", "witness", "fgroupoid", "limits"};
  return s;
}

struct RunConfig {
  std::string command;
  std::vector<std::string> inputs;
  std::string group = "cyclic:2";
  std::size_t objects = 3;
  bool cover = false;
  std::string suite = "all";
  std::string out;
  std::string format = "json";
};

/// Raised for guard violations at the command-line boundary.
struct GuardError : std::runtime_error {
  int code;
  GuardError(int c, const std::string& what) : std::runtime_error(what), code(c) {}
};

/// What verify runs on: either a model, or the reason the input does not
/// decode to a groupoid (an axiom failure, reported as a claim).
struct Instance {
  json description;
  std::shared_ptr<GroupoidModel> model;
  std::optional<ClaimResult> invalid;
};

inline void check_objects(std::size_t n) {
  if (n < kMinObjects || n > kMaxObjects)
    throw GuardError(kInputError, "--objects must lie in [" + std::to_string(kMinObjects) + ", " +
                                      std::to_string(kMaxObjects) + "], got " + std::to_string(n));
}

inline void check_carrier(const MultiSortedStructure& s) {
  if (s.carrier_size() > kMaxCarrier)
    throw GuardError(kBudget, "carrier has " + std::to_string(s.carrier_size()) + " elements, limit is " +
                                  std::to_string(kMaxCarrier));
}

inline void check_group(const FiniteGroup& g) {
  if (g.order() > kMaxGroupOrder)
    throw GuardError(kBudget, "group order " + std::to_string(g.order()) + " exceeds " + std::to_string(kMaxGroupOrder));
}

inline MultiSortedStructure build_structure(const RunConfig& cfg) {
  check_objects(cfg.objects);
  const auto g = load_group(cfg.group);
  check_group(g);
  auto gpd = build_standard_groupoid(g, cfg.objects);
  auto s = cfg.cover ? encode_double_cover(gpd) : encode_groupoid(gpd);
  check_carrier(s);
  return s;
}

inline Instance load_instance(const RunConfig& cfg) {
  Instance inst;
  std::function<MultiSortedStructure()> make;
  if (cfg.inputs.empty()) {
    auto s = build_structure(cfg);
    make = [s] { return s; };
    inst.description = json{{"group", cfg.group}, {"objects", cfg.objects}, {"cover", cfg.cover}};
  } else {
    if (cfg.inputs.size() != 1) throw InputError("verify takes a single --input");
    const auto j = read_json_file(cfg.inputs.front());
    if (j.is_object() && j.contains("sorts")) {
      auto s = structure_from_json(j);
      make = [s] { return s; };
    } else {
      // a groupoid listing: its axioms are checked inside the claim below
      if (!j.is_object() || !(j.contains("morphisms") || j.contains("standard")))
        throw InputError(cfg.inputs.front() + " is neither a structure nor a groupoid");
      make = [j, cover = cfg.cover] {
        const auto gpd = groupoid_from_json(j);
        return cover ? encode_double_cover(gpd) : encode_groupoid(gpd);
      };
    }
    inst.description = json{{"input", cfg.inputs.front()}};
  }
  auto decode = run_claim("groupoid-valid", "input", "the structure encodes a connected finite groupoid",
                          [&](ClaimResult&) {
    try {
      auto s = make();
      check_carrier(s);
      inst.model = std::make_shared<GroupoidModel>(std::move(s));
    } catch (const InputError& e) {
      throw GuardError(kInputError, e.what());  // malformed, not a failed axiom
    }
  });
  if (!inst.model) {
    inst.invalid = std::move(decode);
    return inst;
  }
  const auto& m = *inst.model;
  check_objects(m.objects());
  check_group(vertex_group(m.groupoid(), 0).group);
  if (!cfg.inputs.empty()) {
    inst.description["objects"] = m.objects();
    inst.description["cover"] = m.is_cover();
  }
  inst.description["group order"] = vertex_group(m.groupoid(), 0).group.order();
  return inst;
}

// ---------------------------------------------------------------------------
// suites

inline const std::vector<std::string>& suite_claim_ids(const std::string& suite) {
  static const std::map<std::string, std::vector<std::string>> ids{
      {"section2",
       {"x-is-central-translates", "gamma2-is-center", "hom-automorphisms-are-g", "hom-automorphisms-center",
        "choice-family-automorphisms"}},
      {"section3",
       {"y-sets-regular", "uniform-action", "g-central-in-f", "composite-in-y", "transport-independent",
        "noncentral-example"}},
      {"witness",
       {"witness-preconditions", "witness-containment", "witness-equivalence", "witness-uniqueness",
        "witness-isolation"}},
      {"fgroupoid",
       {"composition-well-defined", "composition-extends-groupoid", "unique-divisors", "path-equivalence-relation",
        "path-reduction", "f-groupoid-valid", "hom-size-equals-y", "vertex-group-is-f",
        "injection-preserves-composition", "vertex-group-contains-g"}},
      {"limits",
       {"chain-limit", "constant-limit", "stage-systems-valid", "restriction-epimorphism", "g-pi-f-chain",
        "g-central-in-pi", "normal-in-f", "gamma-stages-abelian", "stage-limits"}},
  };
  return ids.at(suite);
}

inline std::vector<ClaimResult> skip_suite(const std::string& suite, const std::string& reason) {
  std::vector<ClaimResult> out;
  for (const auto& id : suite_claim_ids(suite)) out.push_back(skipped_claim(id, suite, "", reason));
  return out;
}

inline std::vector<ClaimResult> run_suite(const std::string& suite, const GroupoidModel& m, SearchBudget budget = {}) {
  const std::size_t n = m.objects();
  if (suite == "section2") return verify_section2(m, budget);
  if (suite == "section3") return n < 3 ? skip_suite(suite, "needs at least 3 objects") : verify_section3(m, budget);
  if (suite == "witness")
    return n < 3 ? skip_suite(suite, "needs at least 3 objects") : check_witness(extract_witness(m, 0, 1, 2), budget);
  if (suite == "fgroupoid") {
    if (n < 4) return skip_suite(suite, "needs at least 4 objects");
    if (!vertex_group(m.groupoid(), 0).group.is_abelian()) return skip_suite(suite, "vertex group is not abelian");
    return verify_fgroupoid(m, budget);
  }
  if (suite == "limits") return verify_limits(m, budget);
  throw InputError("unknown suite '" + suite + "'");
}

inline Report verify(const RunConfig& cfg) {
  const auto inst = load_instance(cfg);
  Report r;
  r.instance = inst.description;
  r.suites = cfg.suite == "all" ? all_suites() : std::vector<std::string>{cfg.suite};
  if (inst.invalid) {
    r.claims.push_back(*inst.invalid);
    for (const auto& suite : r.suites)
      for (auto& c : skip_suite(suite, "input is not a valid groupoid")) r.claims.push_back(std::move(c));
    return r;
  }
  ClaimResult ok;
  ok.id = "groupoid-valid";
  ok.suite = "input";
  ok.anchor = "the structure encodes a connected finite groupoid";
  r.claims.push_back(ok);
  for (const auto& suite : r.suites)
    for (auto& c : run_suite(suite, *inst.model)) r.claims.push_back(std::move(c));
  return r;
}

// ---------------------------------------------------------------------------
// report merging

struct Matrix {
  std::vector<std::string> columns;  // claim ids, first appearance order
  std::vector<json> instances;
  std::vector<std::map<std::string, Status>> cells;
};

inline Matrix merge_reports(const std::vector<Report>& reports) {
  Matrix mx;
  std::map<std::string, std::size_t> row_of;
  for (const auto& r : reports) {
    const auto key = r.instance.dump();
    auto [it, fresh] = row_of.emplace(key, mx.instances.size());
    if (fresh) {
      mx.instances.push_back(r.instance);
      mx.cells.emplace_back();
    }
    auto& row = mx.cells[it->second];
    for (const auto& c : r.claims) {
      if (std::find(mx.columns.begin(), mx.columns.end(), c.id) == mx.columns.end()) mx.columns.push_back(c.id);
      auto [cell, added] = row.emplace(c.id, c.status);
      if (!added && cell->second != c.status)
        throw InputError("claim '" + c.id + "' has conflicting statuses for instance " + key);
    }
  }
  return mx;
}

inline json matrix_to_json(const Matrix& mx) {
  json j;
  j["tool"] = kToolName;
  j["version"] = kToolVersion;
  j["columns"] = mx.columns;
  j["rows"] = json::array();
  for (std::size_t i = 0; i < mx.instances.size(); ++i) {
    json cells = json::object();
    for (const auto& id : mx.columns) {
      const auto it = mx.cells[i].find(id);
      cells[id] = it == mx.cells[i].end() ? json(nullptr) : json(to_string(it->second));
    }
    j["rows"].push_back(json{{"instance", mx.instances[i]}, {"claims", cells}});
  }
  return j;
}

/// One line per claim, one column per instance.
inline std::string render_matrix(const Matrix& mx) {
  std::ostringstream os;
  std::size_t w = 5;
  for (const auto& id : mx.columns) w = std::max(w, id.size());
  for (std::size_t i = 0; i < mx.instances.size(); ++i) os << "[" << i + 1 << "] " << mx.instances[i].dump() << "\n";
  os << std::left << std::setw(static_cast<int>(w + 2)) << "claim";
  for (std::size_t i = 0; i < mx.instances.size(); ++i) os << std::setw(16) << ("[" + std::to_string(i + 1) + "]");
  os << "\n";
  for (const auto& id : mx.columns) {
    os << std::setw(static_cast<int>(w + 2)) << id;
    for (const auto& row : mx.cells) {
      const auto it = row.find(id);
      os << std::setw(16) << (it == row.end() ? std::string("-") : to_string(it->second));
    }
    os << "\n";
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// entry point

namespace detail {

inline void emit(const RunConfig& cfg, const std::string& text, std::ostream& out) {
  if (cfg.out.empty()) {
    out << text;
    return;
  }
  std::ofstream f(cfg.out);
  if (!f) throw InputError("cannot write '" + cfg.out + "'");
  f << text;
}

inline int cmd_build(const RunConfig& cfg, std::ostream& out) {
  const auto s = build_structure(cfg);
  if (cfg.format == "text") {
    std::ostringstream os;
    for (const auto& so : s.sorts()) os << so.name << " " << so.size << "\n";
    emit(cfg, os.str(), out);
  } else {
    emit(cfg, structure_to_json(s).dump(2) + "\n", out);
  }
  return kPass;
}

inline int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  const auto r = verify(cfg);
  const auto text = render_text(r);
  if (cfg.format == "text") {
    emit(cfg, text, out);
  } else {
    emit(cfg, report_to_json(r).dump(2) + "\n", out);
    if (!cfg.out.empty()) out << text;
  }
  return r.all_passed() ? kPass : kClaimFailure;
}

inline int cmd_report(const RunConfig& cfg, std::ostream& out) {
  if (cfg.inputs.empty()) throw InputError("report needs at least one report file");
  std::vector<Report> reports;
  for (const auto& p : cfg.inputs) reports.push_back(report_from_json(read_json_file(p)));
  const auto mx = merge_reports(reports);
  emit(cfg, cfg.format == "text" ? render_matrix(mx) : matrix_to_json(mx).dump(2) + "\n", out);
  for (const auto& row : mx.cells)
    for (const auto& [id, st] : row)
      if (st == Status::fail) return kClaimFailure;
  return kPass;
}

}  // namespace detail

inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"finite groupoid verification harness", "gpdlab"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));
  RunConfig cfg;
  const std::vector<std::string> suites{"section2", "section3", "witness", "fgroupoid", "limits", "all"};
  const std::vector<std::string> formats{"json", "text"};

  auto instance_opts = [&](CLI::App* sub) {
    sub->add_option("--group", cfg.group, "cyclic:n | symmetric:n | dihedral:n | quaternion8 | product:a,b | file:path");
    sub->add_option("--objects", cfg.objects, "number of objects");
    sub->add_flag("--cover", cfg.cover, "use the double-cover encoding");
    sub->add_option("--out", cfg.out, "output path (default stdout)");
    sub->add_option("--format", cfg.format)->check(CLI::IsMember(formats));
  };
  auto* build = app.add_subcommand("build", "write the encoded structure");
  instance_opts(build);
  auto* ver = app.add_subcommand("verify", "run verification suites");
  instance_opts(ver);
  ver->add_option("--input", cfg.inputs, "structure or groupoid JSON instead of --group")->expected(1);
  ver->add_option("--suite", cfg.suite)->check(CLI::IsMember(suites));
  auto* rep = app.add_subcommand("report", "merge reports into a claim matrix");
  rep->add_option("reports", cfg.inputs, "report files")->required();
  rep->add_option("--out", cfg.out);
  rep->add_option("--format", cfg.format)->check(CLI::IsMember(formats));

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kPass : kInputError;
  }

  try {
    if (build->parsed()) return detail::cmd_build(cfg, out);
    if (ver->parsed()) return detail::cmd_verify(cfg, out);
    return detail::cmd_report(cfg, out);
  } catch (const GuardError& e) {
    err << "error: " << e.what() << "\n";
    return e.code;
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << "\n";
    return kBudget;
  } catch (const UnsupportedSize& e) {
    err << "budget exceeded: " << e.what() << "\n";
    return kBudget;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
}

}  // namespace gpdlab::cli
