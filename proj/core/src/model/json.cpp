#include "judge/model/json.hpp"

#include "util/encoding.hpp"

namespace judge::model {

using nlohmann::json;

void to_json(json& j, const TestBasis& basis) {
  j = json{{"precondition", basis.precondition},
           {"trigger", basis.trigger},
           {"evidence", basis.evidence}};
  if (!basis.deterministic_labels.empty()) {
    json labels = json::object();
    for (const auto& [role, marker] : basis.deterministic_labels) {
      labels[std::string(to_string(role))] = marker;
    }
    j["deterministic_labels"] = std::move(labels);
  }
}

void to_json(json& j, const NavigationTask& task) {
  j = json{{"task_id", task.task_id},
           {"instruction", task.instruction},
           {"entry_point", task.entry_point}};
}

void to_json(json& j, const EvaluationCase& ec) {
  j = json{{"case_id", ec.case_id},
           {"app_id", ec.app_id},
           {"app_category", ec.app_category},
           {"fault_mode", to_string(ec.fault_mode)},
           {"defect_description", ec.defect_description},
           {"scenario",
            {{"reset_notes", ec.scenario.reset_notes},
             {"initial_conditions", ec.scenario.initial_conditions}}},
           {"test_basis", ec.test_basis},
           {"tasks", ec.tasks}};
}

void to_json(json& j, const Step& step) {
  j = json{{"index", step.index},
           {"thought", step.thought},
           {"action", step.action},
           {"target", step.target},
           {"hit", step.hit},
           {"pre_image", step.pre_image.relative_path},
           {"post_image", step.post_image.relative_path}};
  if (step.pre_text) j["pre_text"] = *step.pre_text;
  if (step.post_text) j["post_text"] = *step.post_text;
}

void to_json(json& j, const DefectClaim& claim) {
  j = json{{"step", claim.step}, {"description", claim.description}};
  if (claim.claimed_fault_mode) j["fault_mode"] = to_string(*claim.claimed_fault_mode);
}

void to_json(json& j, const DefectReport& report) { j = json{{"claims", report.claims}}; }

void to_json(json& j, const Trajectory& trajectory) {
  j = json{{"run_id", trajectory.run_id},
           {"model_id", trajectory.model_id},
           {"case_id", trajectory.case_id},
           {"task_id", trajectory.task_id},
           {"steps", trajectory.steps}};
}

void to_json(json& j, const Segment& segment) {
  j = json{{"start", segment.start},
           {"end", segment.end},
           {"role_marks",
            {{"precondition_at", segment.precondition_at()},
             {"evidence_at", segment.evidence_at()}}}};
}

void to_json(json& j, const VerifiedDefect& defect) {
  j = json{{"fault_mode", to_string(defect.fault_mode)},
           {"step", defect.step},
           {"evidence", defect.evidence},
           {"reason", defect.reason},
           {"locator", defect.locator}};
}

void to_json(json& j, const Verdict& verdict) {
  json diagnostics = json::array();
  for (const AuditEntry& entry : verdict.diagnostics()) {
    diagnostics.push_back(json{{"key", entry.key}, {"value", entry.value}});
  }
  j = json{{"defect_class", to_string(verdict.defect_class())},
           {"reach", verdict.reach()},
           {"trigger", to_string(verdict.trigger())},
           {"detect", verdict.detect()},
           {"verified", verdict.verified()},
           {"segments", verdict.segments()},
           {"claims", verdict.claims()},
           {"unsupported_claims", verdict.unsupported_claims()},
           {"diagnostics", std::move(diagnostics)}};
}

void to_json(json& j, const Observation& obs) {
  j = json::object();
  if (obs.text) j["text"] = *obs.text;
  if (!obs.image.inline_bytes.empty()) {
    j["image_base64"] = util::base64_encode(obs.image.inline_bytes);
  } else if (!obs.image.relative_path.empty()) {
    j["image_path"] = obs.image.relative_path;
  }
}

void to_json(json& j, const ActionRecord& action) {
  j = json{{"thought", action.thought},
           {"action", action.action},
           {"target", action.target},
           {"hit", action.hit}};
}

}  // namespace judge::model
