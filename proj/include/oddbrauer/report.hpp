#pragma once

// Structured reports shared by the command-line tool and the tests. Big
// integers are emitted as JSON numbers when they fit in 53 bits and as
// decimal strings otherwise.

#include "oddbrauer/brauer.hpp"
#include "oddbrauer/criteria.hpp"
#include "oddbrauer/fielddata.hpp"

#include <json.hpp>

#include <string>
#include <utility>

namespace oddbrauer {

inline constexpr const char* kToolVersion = "1.0.0";

inline std::string version_string() {
  return std::string("oddbrauer ") + kToolVersion + " (schema " + std::to_string(kSchemaVersion) + ")";
}

/// One command's output. `inputs` for description-driven commands is the
/// normalised spec, accepted back by parse_spec.
struct Report {
  std::string command;
  std::string version = version_string();
  nlohmann::json inputs = nlohmann::json::object();
  nlohmann::json results = nlohmann::json::object();
  /// Per-result level: "exact", "certified", "conservative", "inconclusive".
  nlohmann::json certification = nlohmann::json::object();

  friend bool operator==(const Report&, const Report&) = default;
};

inline nlohmann::json to_json(const Report& r) {
  nlohmann::json j;
  j["command"] = r.command;
  j["version"] = r.version;
  j["inputs"] = r.inputs;
  j["results"] = r.results;
  j["certification"] = r.certification;
  return j;
}

inline Report report_from_json(const nlohmann::json& j) {
  Report r;
  r.command = j.at("command").get<std::string>();
  r.version = j.at("version").get<std::string>();
  r.inputs = j.at("inputs");
  r.results = j.at("results");
  r.certification = j.at("certification");
  return r;
}

inline std::string dump(const Report& r) { return to_json(r).dump(2) + "\n"; }

inline Report parse_report(const std::string& text) { return report_from_json(nlohmann::json::parse(text)); }

inline nlohmann::json integer_json(const Integer& n) { return detail::integer_json(n); }

inline nlohmann::json to_json(const Verdict& v) {
  return {{"status", to_string(v.status)}, {"holds", v.holds()}, {"reasons", v.reasons}};
}

inline nlohmann::json to_json(const BoundReport& b) {
  nlohmann::json cands = nlohmann::json::array();
  for (const auto& [ell, entry] : b.candidates) {
    nlohmann::json e{{"ell", integer_json(ell)}, {"status", to_string(entry.status)}};
    e["phi_upper"] = entry.phi_upper ? nlohmann::json(*entry.phi_upper) : nlohmann::json(nullptr);
    e["witnesses"] = nlohmann::json::array();
    for (const auto& w : entry.witnesses) e["witnesses"].push_back(integer_json(w));
    cands.push_back(std::move(e));
  }
  nlohmann::json probes = nlohmann::json::array();
  for (const auto& p : b.probes_used) probes.push_back({{"p", integer_json(p.p)}, {"pi", p.pi.str()}});
  return {{"m", b.m}, {"candidates", cands}, {"probes", probes}, {"search_bound", b.search_bound}};
}

inline nlohmann::json to_json(const PlaceData& v) {
  return {{"p", integer_json(v.p)}, {"e", v.e}, {"f", v.f}, {"vals", {v.vals[0], v.vals[1], v.vals[2], v.vals[3]}}};
}

inline nlohmann::json to_json(const IMembership& m) {
  nlohmann::json places = nlohmann::json::array();
  for (const auto& pc : m.places) {
    auto pj = to_json(pc.place);
    pj["condition"] = to_string(pc.condition);
    places.push_back(std::move(pj));
  }
  return {{"p", integer_json(m.p)}, {"in_I", m.member}, {"places", places}};
}

inline const char* certification_level(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::HoldsCertified: return "certified";
    case VerdictStatus::HoldsConservative: return "conservative";
    case VerdictStatus::Inconclusive: return "inconclusive";
  }
  return "?";
}

}  // namespace oddbrauer
