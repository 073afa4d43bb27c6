#include <algorithm>
#include <cctype>

#include "judge/backend/backend.hpp"

namespace judge::backend {

using model::FaultMode;

namespace {

std::string lower(std::string_view text) {
  std::string out(text);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

bool contains(const std::optional<std::string>& text, std::string_view needle) {
  return text && !needle.empty() && text->find(needle) != std::string::npos;
}

bool rule_applies(const InteractionRule& rule, const verify::Transition& t) {
  if (!rule.action_contains && !rule.post_contains && !rule.unchanged) return false;
  if (rule.action_contains) {
    const std::string haystack = lower(t.action.action + " " + t.action.target);
    if (haystack.find(lower(*rule.action_contains)) == std::string::npos) return false;
  }
  if (rule.post_contains && !contains(t.post.text, *rule.post_contains)) return false;
  if (rule.unchanged && !(t.pre.text && t.post.text && *t.pre.text == *t.post.text)) return false;
  return true;
}

std::string describe(const InteractionRule& rule) {
  std::string out = "rule " + std::string(model::short_code(rule.fault_mode)) + ":";
  if (rule.action_contains) out += " action contains '" + *rule.action_contains + "'";
  if (rule.post_contains) out += " post-state contains '" + *rule.post_contains + "'";
  if (rule.unchanged) out += " post-state identical to pre-state";
  return out;
}

InteractionFinding no_defect(const verify::Transition& t, std::string reason) {
  return InteractionFinding{false, std::nullopt, static_cast<long long>(t.ordinal), std::move(reason), ""};
}

}  // namespace

MockBackend::MockBackend(MockRuleTable rules) : rules_(std::move(rules)) {}

retrieval::MatchResult MockBackend::match(const model::Observation& observation, model::BasisRole role,
                                          const model::TestBasis& basis) {
  std::optional<std::string> marker = basis.label(role);
  if (!marker) {
    if (auto it = rules_.state_markers.find(role); it != rules_.state_markers.end()) marker = it->second;
  }
  if (!marker) return {false, "no marker configured for " + std::string(model::to_string(role))};
  if (contains(observation.text, *marker)) return {true, "marker '" + *marker + "' present"};
  return {false, "marker '" + *marker + "' absent"};
}

DisplayFinding MockBackend::verify_display_state(const model::Observation& observation) {
  DisplayFinding finding;
  for (const DisplayRule& rule : rules_.display_rules) {
    if (!contains(observation.text, rule.marker)) continue;
    finding.has_defect = true;
    finding.defects.push_back(DisplayDefect{rule.fault_mode,
                                            {"page text carries marker " + rule.marker},
                                            "step " + std::to_string(observation.step),
                                            "marker " + rule.marker + " maps to " +
                                                std::string(model::to_string(rule.fault_mode))});
  }
  return finding;
}

InteractionFinding MockBackend::verify_interaction_transition(const model::NavigationTask&,
                                                              const model::TestBasis&,
                                                              std::span<const verify::Transition>,
                                                              const verify::Transition& current) {
  if (!current.action.hit) return no_defect(current, "hit=false: the agent did not actuate the intended control");
  for (const InteractionRule& rule : rules_.interaction_rules) {
    if (model::defect_class(rule.fault_mode) != model::DefectClass::Interaction) continue;
    if (!rule_applies(rule, current)) continue;
    return InteractionFinding{true, rule.fault_mode, static_cast<long long>(current.ordinal), describe(rule),
                              current.post.text.value_or("")};
  }
  return no_defect(current, "transition behaves as expected");
}

InteractionFinding MockBackend::verify_unified_transition(const model::NavigationTask& task,
                                                          const model::TestBasis& basis,
                                                          std::span<const verify::Transition> history,
                                                          const verify::Transition& current) {
  InteractionFinding finding = verify_interaction_transition(task, basis, history, current);
  if (finding.has_defect) return finding;
  for (const DisplayRule& rule : rules_.display_rules) {
    if (!contains(current.post.text, rule.marker)) continue;
    return InteractionFinding{true, rule.fault_mode, static_cast<long long>(current.ordinal),
                              "marker " + rule.marker + " in post-state",
                              "step " + std::to_string(current.ordinal)};
  }
  return finding;
}

ConsistencyFinding MockBackend::judge_consistency(const model::DefectClaim& claim,
                                                  const model::VerifiedDefect& defect) {
  const bool consistent = claim_consistent(claim, defect, 1, rules_.consistency_keywords);
  return {consistent, consistent ? "claim matches the verified defect" : "claim does not match"};
}

}  // namespace judge::backend
