#include "judge/backend/mock_rules.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace judge::backend {

using model::BasisRole;
using model::FaultMode;
using nlohmann::json;

namespace {

std::string lower(std::string_view text) {
  std::string out(text);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

FaultMode require_mode(const json& value, const char* where) {
  if (!value.is_string()) throw std::invalid_argument(std::string(where) + ": fault_mode must be a string");
  auto mode = model::parse_fault_mode(value.get<std::string>());
  if (!mode) throw std::invalid_argument(std::string(where) + ": unknown fault mode " + value.get<std::string>());
  return *mode;
}

}  // namespace

bool claim_consistent(const model::DefectClaim& claim, const model::VerifiedDefect& defect, std::size_t window,
                      const KeywordMap& keywords) {
  const std::size_t distance = claim.step > defect.step ? claim.step - defect.step : defect.step - claim.step;
  if (distance > window) return false;
  if (claim.claimed_fault_mode) return *claim.claimed_fault_mode == defect.fault_mode;
  auto it = keywords.find(defect.fault_mode);
  if (it == keywords.end()) return false;
  const std::string description = lower(claim.description);
  return std::any_of(it->second.begin(), it->second.end(), [&](const std::string& keyword) {
    return !keyword.empty() && description.find(lower(keyword)) != std::string::npos;
  });
}

KeywordMap default_keywords() {
  return {
      {FaultMode::ContentRendering,
       {"garbled", "broken image", "broken icon", "not rendered", "placeholder", "missing image", "blank image",
        "unreadable", "truncated"}},
      {FaultMode::ElementLayout, {"overlap", "misaligned", "layout", "cut off", "out of place", "partially visible"}},
      {FaultMode::NavigationLogicError, {"wrong page", "navigated to", "navigation", "unrelated page"}},
      {FaultMode::OperationNoResponse,
       {"no response", "did nothing", "does nothing", "not respond", "no feedback", "nothing happened",
        "unresponsive"}},
      {FaultMode::UnexpectedTaskResult, {"unexpected", "wrong result", "not applied", "incorrect result"}},
  };
}

MockRuleTable MockRuleTable::defaults() {
  MockRuleTable table;
  table.state_markers = {{BasisRole::Precondition, "KP:PRECOND"},
                         {BasisRole::Trigger, "KP:TRIGGER"},
                         {BasisRole::Evidence, "KP:EVIDENCE"}};
  table.display_rules = {{"ANOMALY:CR", FaultMode::ContentRendering}, {"ANOMALY:EL", FaultMode::ElementLayout}};
  table.interaction_rules = {
      {FaultMode::OperationNoResponse, std::string("search"), std::nullopt, true},
      {FaultMode::OperationNoResponse, std::nullopt, std::string("ANOMALY:ONR"), false},
      {FaultMode::NavigationLogicError, std::nullopt, std::string("ANOMALY:NLE"), false},
      {FaultMode::UnexpectedTaskResult, std::nullopt, std::string("ANOMALY:UTR"), false},
  };
  table.consistency_keywords = default_keywords();
  return table;
}

MockRuleTable MockRuleTable::from_json(const json& value) {
  if (!value.is_object()) throw std::invalid_argument("mock rules: expected an object");
  MockRuleTable table = defaults();

  if (auto it = value.find("state_markers"); it != value.end()) {
    if (!it->is_object()) throw std::invalid_argument("mock rules: state_markers must be an object");
    table.state_markers.clear();
    for (const auto& [key, marker] : it->items()) {
      auto role = model::parse_basis_role(key);
      if (!role || !marker.is_string()) throw std::invalid_argument("mock rules: bad state marker " + key);
      table.state_markers[*role] = marker.get<std::string>();
    }
  }
  if (auto it = value.find("display_rules"); it != value.end()) {
    if (!it->is_array()) throw std::invalid_argument("mock rules: display_rules must be an array");
    table.display_rules.clear();
    for (const json& rule : *it) {
      if (!rule.contains("marker") || !rule["marker"].is_string()) {
        throw std::invalid_argument("mock rules: display rule needs a marker");
      }
      DisplayRule parsed{rule["marker"].get<std::string>(), require_mode(rule.value("fault_mode", json()), "display rule")};
      if (model::defect_class(parsed.fault_mode) != model::DefectClass::Display) {
        throw std::invalid_argument("mock rules: display rule with interaction fault mode");
      }
      table.display_rules.push_back(std::move(parsed));
    }
  }
  if (auto it = value.find("interaction_rules"); it != value.end()) {
    if (!it->is_array()) throw std::invalid_argument("mock rules: interaction_rules must be an array");
    table.interaction_rules.clear();
    for (const json& rule : *it) {
      InteractionRule parsed;
      parsed.fault_mode = require_mode(rule.value("fault_mode", json()), "interaction rule");
      if (rule.contains("action_contains")) parsed.action_contains = rule["action_contains"].get<std::string>();
      if (rule.contains("post_contains")) parsed.post_contains = rule["post_contains"].get<std::string>();
      parsed.unchanged = rule.value("unchanged", false);
      table.interaction_rules.push_back(std::move(parsed));
    }
  }
  if (auto it = value.find("consistency_keywords"); it != value.end()) {
    if (!it->is_object()) throw std::invalid_argument("mock rules: consistency_keywords must be an object");
    table.consistency_keywords.clear();
    for (const auto& [key, words] : it->items()) {
      auto mode = model::parse_fault_mode(key);
      if (!mode || !words.is_array()) throw std::invalid_argument("mock rules: bad keyword entry " + key);
      table.consistency_keywords[*mode] = words.get<std::vector<std::string>>();
    }
  }
  return table;
}

json MockRuleTable::to_json() const {
  json markers = json::object();
  for (const auto& [role, marker] : state_markers) markers[std::string(model::to_string(role))] = marker;
  json display = json::array();
  for (const DisplayRule& rule : display_rules) {
    display.push_back(json{{"marker", rule.marker}, {"fault_mode", model::to_string(rule.fault_mode)}});
  }
  json interaction = json::array();
  for (const InteractionRule& rule : interaction_rules) {
    json entry{{"fault_mode", model::to_string(rule.fault_mode)}, {"unchanged", rule.unchanged}};
    if (rule.action_contains) entry["action_contains"] = *rule.action_contains;
    if (rule.post_contains) entry["post_contains"] = *rule.post_contains;
    interaction.push_back(std::move(entry));
  }
  json keywords = json::object();
  for (const auto& [mode, words] : consistency_keywords) keywords[std::string(model::to_string(mode))] = words;
  return json{{"state_markers", std::move(markers)},
              {"display_rules", std::move(display)},
              {"interaction_rules", std::move(interaction)},
              {"consistency_keywords", std::move(keywords)}};
}

}  // namespace judge::backend
