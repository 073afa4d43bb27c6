#pragma once

#include <nlohmann/json.hpp>

#include "judge/model/types.hpp"
#include "judge/model/verdict.hpp"

namespace judge::model {

// Serialization only. Loading from disk goes through the validators in
// bundle.hpp, which collect every violation instead of stopping at the first.

void to_json(nlohmann::json& j, const TestBasis& basis);
void to_json(nlohmann::json& j, const NavigationTask& task);
void to_json(nlohmann::json& j, const EvaluationCase& ec);
void to_json(nlohmann::json& j, const Step& step);
void to_json(nlohmann::json& j, const DefectClaim& claim);
void to_json(nlohmann::json& j, const DefectReport& report);
void to_json(nlohmann::json& j, const Trajectory& trajectory);
void to_json(nlohmann::json& j, const Segment& segment);
void to_json(nlohmann::json& j, const VerifiedDefect& defect);
void to_json(nlohmann::json& j, const Verdict& verdict);

/// Observation as exchanged over the assist service: {"text": ..., "image_path"|"image_base64": ...}.
void to_json(nlohmann::json& j, const Observation& obs);
void to_json(nlohmann::json& j, const ActionRecord& action);

}  // namespace judge::model
