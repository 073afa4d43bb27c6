#include "judge/backend/schemas.hpp"

#include <stdexcept>

namespace judge::backend {

using model::DefectClass;
using model::FaultMode;
using nlohmann::json;

std::string_view to_string(SchemaId id) noexcept {
  switch (id) {
    case SchemaId::Match: return "match";
    case SchemaId::Display: return "display";
    case SchemaId::Interaction: return "interaction";
    case SchemaId::Consistency: return "consistency";
    case SchemaId::Unified: return "unified";
  }
  return "";
}

namespace {

using Problem = std::optional<std::string>;

enum class Kind { Boolean, String, Integer, Array, Object };

bool is_kind(const json& value, Kind kind) {
  switch (kind) {
    case Kind::Boolean: return value.is_boolean();
    case Kind::String: return value.is_string();
    case Kind::Integer: return value.is_number_integer();
    case Kind::Array: return value.is_array();
    case Kind::Object: return value.is_object();
  }
  return false;
}

Problem require(const json& obj, const char* key, Kind kind) {
  auto it = obj.find(key);
  if (it == obj.end()) return std::string("missing '") + key + "'";
  if (!is_kind(*it, kind)) return std::string("'") + key + "' has the wrong type";
  return std::nullopt;
}

/// nullopt type means "None". Returns false when the label is unknown or
/// belongs to a class outside `allowed`.
bool parse_type(const std::string& label, std::optional<DefectClass> allowed, std::optional<FaultMode>& out) {
  if (label == "None") {
    out.reset();
    return true;
  }
  auto mode = model::parse_fault_mode(label);
  if (!mode) return false;
  if (allowed && model::defect_class(*mode) != *allowed) return false;
  out = mode;
  return true;
}

Problem check_display(const json& v) {
  if (auto p = require(v, "has_defect", Kind::Boolean)) return p;
  if (auto p = require(v, "defects", Kind::Array)) return p;
  bool any_typed = false;
  for (const json& d : v["defects"]) {
    if (!d.is_object()) return "defect entry is not an object";
    if (auto p = require(d, "type", Kind::String)) return p;
    std::optional<FaultMode> type;
    if (!parse_type(d["type"].get<std::string>(), DefectClass::Display, type)) {
      return "unknown display defect type '" + d["type"].get<std::string>() + "'";
    }
    any_typed = any_typed || type.has_value();
    if (auto p = require(d, "evidence", Kind::Array)) return p;
    for (const json& e : d["evidence"]) {
      if (!e.is_string()) return "evidence entries must be strings";
    }
    if (auto p = require(d, "location_hint", Kind::String)) return p;
    if (auto p = require(d, "reason", Kind::String)) return p;
  }
  if (v["has_defect"].get<bool>() && !any_typed) return "has_defect=true without a typed defect";
  return std::nullopt;
}

Problem check_step_finding(const json& v, std::optional<DefectClass> allowed) {
  if (auto p = require(v, "has_defect", Kind::Boolean)) return p;
  if (auto p = require(v, "defect", Kind::Object)) return p;
  const json& d = v["defect"];
  if (auto p = require(d, "type", Kind::String)) return p;
  std::optional<FaultMode> type;
  if (!parse_type(d["type"].get<std::string>(), allowed, type)) {
    return "unknown defect type '" + d["type"].get<std::string>() + "'";
  }
  if (auto p = require(d, "step", Kind::Integer)) return p;
  if (auto p = require(d, "reason", Kind::String)) return p;
  if (d.contains("effect") && !d["effect"].is_string()) return std::string("'effect' has the wrong type");
  if (v["has_defect"].get<bool>() && !type) return "has_defect=true with type None";
  return std::nullopt;
}

}  // namespace

std::optional<std::string> conformance_error(SchemaId id, const json& value) {
  if (!value.is_object()) return "expected a JSON object";
  switch (id) {
    case SchemaId::Match: {
      if (auto p = require(value, "matched", Kind::Boolean)) return p;
      if (auto p = require(value, "reason", Kind::String)) return p;
      if (value["reason"].get<std::string>().empty()) return "'reason' must not be empty";
      return std::nullopt;
    }
    case SchemaId::Display: return check_display(value);
    case SchemaId::Interaction: return check_step_finding(value, DefectClass::Interaction);
    case SchemaId::Unified: return check_step_finding(value, std::nullopt);
    case SchemaId::Consistency: {
      if (auto p = require(value, "consistent", Kind::Boolean)) return p;
      if (auto p = require(value, "reason", Kind::String)) return p;
      return std::nullopt;
    }
  }
  return "unknown schema";
}

namespace {

void ensure(SchemaId id, const json& value) {
  if (auto problem = conformance_error(id, value)) {
    throw std::invalid_argument(std::string(to_string(id)) + " output: " + *problem);
  }
}

InteractionFinding parse_step_finding(const json& value) {
  const json& d = value["defect"];
  InteractionFinding finding;
  finding.has_defect = value["has_defect"].get<bool>();
  parse_type(d["type"].get<std::string>(), std::nullopt, finding.type);
  finding.step = d["step"].get<long long>();
  finding.reason = d["reason"].get<std::string>();
  finding.effect = d.value("effect", std::string{});
  return finding;
}

std::string type_label(const std::optional<FaultMode>& type) {
  return type ? std::string(model::to_string(*type)) : std::string("None");
}

}  // namespace

retrieval::MatchResult parse_match(const json& value) {
  ensure(SchemaId::Match, value);
  return {value["matched"].get<bool>(), value["reason"].get<std::string>()};
}

DisplayFinding parse_display(const json& value) {
  ensure(SchemaId::Display, value);
  DisplayFinding finding;
  finding.has_defect = value["has_defect"].get<bool>();
  for (const json& d : value["defects"]) {
    DisplayDefect defect;
    parse_type(d["type"].get<std::string>(), DefectClass::Display, defect.type);
    defect.evidence = d["evidence"].get<std::vector<std::string>>();
    defect.location_hint = d["location_hint"].get<std::string>();
    defect.reason = d["reason"].get<std::string>();
    finding.defects.push_back(std::move(defect));
  }
  return finding;
}

InteractionFinding parse_interaction(const json& value) {
  ensure(SchemaId::Interaction, value);
  return parse_step_finding(value);
}

InteractionFinding parse_unified(const json& value) {
  ensure(SchemaId::Unified, value);
  return parse_step_finding(value);
}

ConsistencyFinding parse_consistency(const json& value) {
  ensure(SchemaId::Consistency, value);
  return {value["consistent"].get<bool>(), value["reason"].get<std::string>()};
}

json to_json_value(const retrieval::MatchResult& match) {
  return json{{"matched", match.matched}, {"reason", match.reason}};
}

json to_json_value(const DisplayFinding& finding) {
  json defects = json::array();
  for (const DisplayDefect& d : finding.defects) {
    defects.push_back(json{{"type", type_label(d.type)},
                           {"evidence", d.evidence},
                           {"location_hint", d.location_hint},
                           {"reason", d.reason}});
  }
  return json{{"has_defect", finding.has_defect}, {"defects", std::move(defects)}};
}

json to_json_value(const InteractionFinding& finding) {
  return json{{"has_defect", finding.has_defect},
              {"defect",
               {{"type", type_label(finding.type)},
                {"step", finding.step},
                {"reason", finding.reason},
                {"effect", finding.effect}}}};
}

json to_json_value(const ConsistencyFinding& finding) {
  return json{{"consistent", finding.consistent}, {"reason", finding.reason}};
}

}  // namespace judge::backend
