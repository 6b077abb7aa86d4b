#pragma once

// Verification reports. JSON is the contract; text is a rendering of it.

#include <chrono>
#include <cstddef>
#include <ctime>
#include <functional>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "gpdlab/errors.hpp"

namespace gpdlab {

using json = nlohmann::ordered_json;

inline constexpr const char* kToolName = "gpdlab";
inline constexpr const char* kToolVersion = "1.0.0";

enum class Status { pass, fail, surrogate_pass, skipped };

inline std::string to_string(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::surrogate_pass: return "surrogate-pass";
    case Status::skipped: return "skipped";
  }
  return "fail";
}

inline Status status_from_string(const std::string& s) {
  if (s == "pass") return Status::pass;
  if (s == "fail") return Status::fail;
  if (s == "surrogate-pass") return Status::surrogate_pass;
  if (s == "skipped") return Status::skipped;
  throw InputError("unknown claim status '" + s + "'");
}

struct ClaimResult {
  std::string id;
  std::string suite;
  std::string anchor;
  Status status = Status::pass;
  json details = json::object();
  std::optional<json> witness;
  std::vector<std::string> surrogates;
  std::string reason;
  double wall_ms = 0;  // not part of the comparable report
};

struct Report {
  json instance = json::object();
  std::vector<std::string> suites;
  std::vector<ClaimResult> claims;

  bool all_passed() const {
    for (const auto& c : claims)
      if (c.status == Status::fail) return false;
    return true;
  }

  const ClaimResult* find(const std::string& id) const {
    for (const auto& c : claims)
      if (c.id == id) return &c;
    return nullptr;
  }
};

inline json claim_to_json(const ClaimResult& c) {
  json j;
  j["id"] = c.id;
  j["suite"] = c.suite;
  j["anchor"] = c.anchor;
  j["status"] = to_string(c.status);
  if (!c.details.empty()) j["details"] = c.details;
  if (c.witness) j["witness"] = *c.witness;
  j["surrogates"] = c.surrogates;
  if (!c.reason.empty()) j["reason"] = c.reason;
  return j;
}

/// Everything except "timestamp" is a pure function of the inputs.
inline json report_to_json(const Report& r, bool with_timestamp = true) {
  json j;
  j["tool"] = kToolName;
  j["version"] = kToolVersion;
  j["instance"] = r.instance;
  j["suites"] = r.suites;
  j["claims"] = json::array();
  for (const auto& c : r.claims) j["claims"].push_back(claim_to_json(c));
  if (with_timestamp) {
    json ts;
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::ostringstream os;
    os << std::put_time(std::gmtime(&now), "%Y-%m-%dT%H:%M:%SZ");
    ts["generated_at"] = os.str();
    json wall = json::object();
    for (const auto& c : r.claims) wall[c.id] = c.wall_ms;
    ts["wall_ms"] = wall;
    j["timestamp"] = ts;
  }
  return j;
}

inline Report report_from_json(const json& j) {
  if (!j.is_object() || !j.contains("claims") || !j["claims"].is_array() || !j.contains("instance"))
    throw InputError("report is missing 'instance' or 'claims'");
  Report r;
  r.instance = j["instance"];
  if (j.contains("suites"))
    for (const auto& s : j["suites"]) r.suites.push_back(s.get<std::string>());
  for (const auto& c : j["claims"]) {
    if (!c.is_object() || !c.contains("id") || !c.contains("status"))
      throw InputError("claim entry without id or status");
    ClaimResult cr;
    cr.id = c["id"].get<std::string>();
    cr.suite = c.value("suite", "");
    cr.anchor = c.value("anchor", "");
    cr.status = status_from_string(c["status"].get<std::string>());
    if (c.contains("details")) cr.details = c["details"];
    if (c.contains("witness")) cr.witness = c["witness"];
    if (c.contains("surrogates"))
      for (const auto& s : c["surrogates"]) cr.surrogates.push_back(s.get<std::string>());
    cr.reason = c.value("reason", "");
    r.claims.push_back(std::move(cr));
  }
  return r;
}

/// Runs `body`, timing it. Library errors other than budget overruns turn
/// into a failed claim carrying the error as witness.
inline ClaimResult run_claim(std::string id, std::string suite, std::string anchor,
                             const std::function<void(ClaimResult&)>& body) {
  ClaimResult c;
  c.id = std::move(id);
  c.suite = std::move(suite);
  c.anchor = std::move(anchor);
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(c);
  } catch (const BudgetExceeded&) {
    throw;
  } catch (const AxiomViolation& e) {
    c.status = Status::fail;
    c.witness = json{{"error", e.what()}, {"kind", e.kind()}, {"elements", e.witness()}};
  } catch (const Error& e) {
    c.status = Status::fail;
    c.witness = json{{"error", e.what()}};
  }
  c.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return c;
}

inline ClaimResult skipped_claim(std::string id, std::string suite, std::string anchor, std::string reason) {
  ClaimResult c;
  c.id = std::move(id);
  c.suite = std::move(suite);
  c.anchor = std::move(anchor);
  c.status = Status::skipped;
  c.reason = std::move(reason);
  return c;
}

inline std::string render_text(const Report& r) {
  std::ostringstream os;
  os << kToolName << " " << kToolVersion << "  instance " << r.instance.dump() << "\n";
  for (const auto& c : r.claims) {
    os << "  " << std::left << std::setw(15) << to_string(c.status) << std::setw(36) << c.id << c.anchor;
    if (!c.reason.empty()) os << "  (" << c.reason << ")";
    os << "\n";
    if (c.witness) os << "      witness: " << c.witness->dump() << "\n";
  }
  os << (r.all_passed() ? "result: pass\n" : "result: FAIL\n");
  return os.str();
}

}  // namespace gpdlab
