#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "judge/model/types.hpp"

namespace judge::backend {

/// Fault mode -> phrases that identify it in a free-text claim.
using KeywordMap = std::map<model::FaultMode, std::vector<std::string>>;

/// Deterministic claim/defect agreement: the claim step is within `window`
/// of the defect step, and either the claimed mode equals the defect mode or
/// no mode was claimed and the description contains one of the defect mode's
/// keywords (case-insensitive).
bool claim_consistent(const model::DefectClaim& claim, const model::VerifiedDefect& defect,
                      std::size_t window, const KeywordMap& keywords);

KeywordMap default_keywords();

struct DisplayRule {
  std::string marker;
  model::FaultMode fault_mode = model::FaultMode::ContentRendering;
};

/// All set conditions must hold. Only evaluated for transitions with hit=true.
struct InteractionRule {
  model::FaultMode fault_mode = model::FaultMode::OperationNoResponse;
  std::optional<std::string> action_contains;  // over "action target", case-insensitive
  std::optional<std::string> post_contains;
  bool unchanged = false;  // post text equals pre text
};

/// Pure text rules standing in for the judge model.
struct MockRuleTable {
  std::map<model::BasisRole, std::string> state_markers;
  std::vector<DisplayRule> display_rules;
  std::vector<InteractionRule> interaction_rules;
  KeywordMap consistency_keywords;

  static MockRuleTable defaults();
  /// Missing sections fall back to defaults. Throws std::invalid_argument.
  static MockRuleTable from_json(const nlohmann::json& value);
  nlohmann::json to_json() const;
};

}  // namespace judge::backend
