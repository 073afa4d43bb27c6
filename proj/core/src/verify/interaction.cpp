#include <algorithm>

#include "judge/verify/verifiers.hpp"

namespace judge::verify {

InteractionResult verify_interaction(std::span<const model::Segment> segments, const model::Trajectory& trajectory,
                                     const model::NavigationTask& task, const model::TestBasis& basis,
                                     backend::JudgeBackend& backend, bool unified) {
  InteractionResult result;
  const std::string prefix = unified ? "unified" : "interaction";
  std::size_t judged = 0;

  for (const model::Segment& segment : segments) {
    InteractionHistory history;
    for (const Transition& transition : transitions_of(trajectory, segment)) {
      history.push_back(transition);
      ++judged;
      const backend::InteractionFinding finding =
          unified ? backend.verify_unified_transition(task, basis, history, transition)
                  : backend.verify_interaction_transition(task, basis, history, transition);
      if (!finding.has_defect || !finding.type) continue;

      if (finding.step < 0 || !segment.contains(static_cast<std::size_t>(finding.step))) {
        result.diagnostics.push_back(
            {prefix + ".discarded", "StepOutOfSegment: transition " + std::to_string(transition.ordinal) +
                                        " reported step " + std::to_string(finding.step) + " outside [" +
                                        std::to_string(segment.start) + "," + std::to_string(segment.end) + "]"});
        continue;
      }
      result.trigger = true;
      std::vector<std::string> evidence;
      if (!finding.effect.empty()) evidence.push_back(finding.effect);
      result.verified.push_back(model::VerifiedDefect{*finding.type, static_cast<std::size_t>(finding.step),
                                                      std::move(evidence), finding.reason, finding.effect});
      result.diagnostics.push_back({prefix + ".finding", "step=" + std::to_string(finding.step) + " type=" +
                                                             std::string(model::short_code(*finding.type)) +
                                                             " history=" + std::to_string(history.size()) +
                                                             " reason=" + finding.reason});
    }
  }
  std::sort(result.verified.begin(), result.verified.end(), model::canonical_less);
  result.diagnostics.push_back({prefix + ".transitions", std::to_string(judged)});
  return result;
}

}  // namespace judge::verify
