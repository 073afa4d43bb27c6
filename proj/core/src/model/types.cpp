#include "judge/model/types.hpp"

#include <algorithm>
#include <tuple>

#include "util/encoding.hpp"

namespace judge::model {

std::string_view to_string(BasisRole role) noexcept {
  switch (role) {
    case BasisRole::Precondition: return "precondition";
    case BasisRole::Trigger: return "trigger";
    case BasisRole::Evidence: return "evidence";
  }
  return "";
}

std::optional<BasisRole> parse_basis_role(std::string_view text) noexcept {
  if (text == "precondition") return BasisRole::Precondition;
  if (text == "trigger") return BasisRole::Trigger;
  if (text == "evidence") return BasisRole::Evidence;
  return std::nullopt;
}

const std::string& TestBasis::description(BasisRole role) const noexcept {
  switch (role) {
    case BasisRole::Precondition: return precondition;
    case BasisRole::Trigger: return trigger;
    case BasisRole::Evidence: break;
  }
  return evidence;
}

std::optional<std::string> TestBasis::label(BasisRole role) const {
  if (auto it = deterministic_labels.find(role); it != deterministic_labels.end()) {
    return it->second;
  }
  return std::nullopt;
}

const NavigationTask* EvaluationCase::find_task(std::string_view task_id) const noexcept {
  auto it = std::find_if(tasks.begin(), tasks.end(),
                         [&](const NavigationTask& t) { return t.task_id == task_id; });
  return it == tasks.end() ? nullptr : &*it;
}

std::string ImageRef::read_bytes() const {
  if (!inline_bytes.empty()) return inline_bytes;
  return util::read_file(resolved_path.empty() ? relative_path : resolved_path.string());
}

Observation Step::pre_observation() const {
  return Observation{index, Phase::Pre, pre_image, pre_text};
}

Observation Step::post_observation() const {
  return Observation{index, Phase::Post, post_image, post_text};
}

ActionRecord Step::action_record() const {
  return ActionRecord{thought, action, target, hit};
}

bool canonical_less(const VerifiedDefect& a, const VerifiedDefect& b) {
  return std::tie(a.step, a.fault_mode, a.reason, a.locator, a.evidence) <
         std::tie(b.step, b.fault_mode, b.reason, b.locator, b.evidence);
}

}  // namespace judge::model
