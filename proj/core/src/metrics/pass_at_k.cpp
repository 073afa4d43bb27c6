#include <algorithm>
#include <vector>

#include "judge/metrics/metrics.hpp"

namespace judge::metrics {

std::string_view to_string(Stage stage) noexcept {
  switch (stage) {
    case Stage::Reach:
      return "reach";
    case Stage::Trigger:
      return "trigger";
    case Stage::Detect:
      return "detect";
  }
  return "unknown";
}

bool stage_success(const model::Verdict& verdict, Stage stage) {
  switch (stage) {
    case Stage::Reach:
      return verdict.reach();
    case Stage::Trigger:
      if (verdict.defect_class() == model::DefectClass::Display) return verdict.reach();
      return verdict.trigger() == model::Trigger::True;
    case Stage::Detect:
      return verdict.detect();
  }
  return false;
}

std::optional<StageOutcome> collapse_pass_at_k(std::span<const RunOutcome> runs, std::size_t k, Stage stage) {
  std::vector<const RunOutcome*> scored;
  for (const auto& run : runs) {
    if (run.scored()) scored.push_back(&run);
  }
  if (scored.empty() || k == 0) return std::nullopt;
  std::sort(scored.begin(), scored.end(),
            [](const RunOutcome* a, const RunOutcome* b) { return a->run_index < b->run_index; });
  if (scored.size() > k) scored.resize(k);

  StageOutcome out;
  out.unit = scored.front()->unit();
  out.fault_mode = scored.front()->fault_mode;
  out.stage = stage;
  bool any_detect = false;
  bool any_unsupported = false;
  for (const auto* run : scored) {
    out.success = out.success || stage_success(*run->verdict, stage);
    any_detect = any_detect || run->verdict->detect();
    any_unsupported = any_unsupported || run->verdict->has_unsupported_claim();
  }
  out.false_report = !any_detect && any_unsupported;
  return out;
}

}  // namespace judge::metrics
