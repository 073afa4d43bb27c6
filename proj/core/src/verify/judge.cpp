#include "judge/verify/judge.hpp"

#include <algorithm>

#include "judge/backend/errors.hpp"
#include "judge/retrieval/retriever.hpp"

namespace judge::verify {

using model::AuditEntry;
using model::DefectClass;
using model::Trigger;

namespace {

std::string describe(const retrieval::MatchRecord& record) {
  return "step=" + std::to_string(record.step) + (record.phase == model::Phase::Pre ? " phase=pre" : "") +
         " role=" + std::string(model::to_string(record.role)) + " matched=" + (record.matched ? "true" : "false") +
         " reason=" + record.reason;
}

void append(std::vector<AuditEntry>& into, std::vector<AuditEntry> from) {
  into.insert(into.end(), std::make_move_iterator(from.begin()), std::make_move_iterator(from.end()));
}

}  // namespace

JudgeOutcome judge_trajectory(const model::EvaluationCase& ec, const model::NavigationTask& task,
                              const model::Trajectory& trajectory, backend::JudgeBackend& backend,
                              const JudgeOptions& options) {
  try {
    model::VerdictParts parts;
    parts.defect_class = ec.defect_class();
    auto& log = parts.diagnostics;

    // Stage 1.
    if (options.no_retrieval) {
      parts.segments = retrieval::whole_trajectory_segment(trajectory);
      parts.reach = !parts.segments.empty();
      log.push_back({"reach", "not_evaluated"});
    } else {
      retrieval::RetrievalResult retrieved = retrieval::retrieve_segments(trajectory, ec.test_basis, backend);
      for (const retrieval::MatchRecord& record : retrieved.records) log.push_back({"match", describe(record)});
      parts.reach = retrieved.reach;
      parts.segments = std::move(retrieved.segments);
    }
    for (const model::Segment& s : parts.segments) {
      log.push_back({"segment", std::to_string(s.start) + ".." + std::to_string(s.end)});
    }

    // Stage 2.
    bool interaction_trigger = false;
    if (options.unified_verifier) {
      log.push_back({"verifier", "unified"});
      InteractionResult result =
          verify_interaction(parts.segments, trajectory, task, ec.test_basis, backend, /*unified=*/true);
      interaction_trigger = result.trigger;
      parts.verified = std::move(result.verified);
      append(log, std::move(result.diagnostics));
    } else {
      const bool run_display =
          options.routing == VerifierRouting::RunBoth || parts.defect_class == DefectClass::Display;
      const bool run_interaction =
          options.routing == VerifierRouting::RunBoth || parts.defect_class == DefectClass::Interaction;
      if (run_display) {
        log.push_back({"verifier", "display"});
        DisplayResult result = verify_display(parts.segments, trajectory, backend, options.display_fan_out);
        parts.verified = std::move(result.verified);
        append(log, std::move(result.diagnostics));
      }
      if (run_interaction) {
        log.push_back({"verifier", "interaction"});
        InteractionResult result = verify_interaction(parts.segments, trajectory, task, ec.test_basis, backend);
        interaction_trigger = result.trigger;
        parts.verified.insert(parts.verified.end(), result.verified.begin(), result.verified.end());
        append(log, std::move(result.diagnostics));
      }
      // Under run_both any verified finding counts as triggered.
      if (options.routing == VerifierRouting::RunBoth) interaction_trigger = !parts.verified.empty();
    }
    std::sort(parts.verified.begin(), parts.verified.end(), model::canonical_less);

    if (parts.defect_class == DefectClass::Display) {
      parts.trigger = Trigger::NotApplicable;
    } else {
      parts.trigger = interaction_trigger ? Trigger::True : Trigger::False;
    }

    // Report consistency.
    parts.claims = trajectory.report.claims.size();
    if (!parts.verified.empty()) {
      for (const model::DefectClaim& claim : trajectory.report.claims) {
        const bool supported = claim_supported(claim, parts.verified, options.consistency, ec.fault_mode, &backend);
        parts.detect = parts.detect || supported;
        if (!supported) ++parts.unsupported_claims;
        log.push_back({"claim", "step=" + std::to_string(claim.step) + " supported=" + (supported ? "true" : "false")});
      }
      log.push_back({"headline", "step=" + std::to_string(parts.verified.front().step) + " type=" +
                                     std::string(model::short_code(parts.verified.front().fault_mode))});
    } else {
      parts.unsupported_claims = parts.claims;
    }

    return model::Verdict::make(std::move(parts));
  } catch (const backend::BackendFailure& failure) {
    return Unscored{failure.what()};
  }
}

}  // namespace judge::verify
