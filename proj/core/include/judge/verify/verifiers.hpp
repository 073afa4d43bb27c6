#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "judge/backend/backend.hpp"
#include "judge/backend/mock_rules.hpp"
#include "judge/model/types.hpp"
#include "judge/model/verdict.hpp"

namespace judge::verify {

struct DisplayResult {
  std::vector<model::VerifiedDefect> verified;  // canonical order
  model::Trigger trigger = model::Trigger::NotApplicable;
  std::vector<model::AuditEntry> diagnostics;
};

/// Judges every state (post-state of steps s..u) of every segment on its
/// own. Up to `fan_out` judgments run concurrently. Results are returned in
/// canonical order.
DisplayResult verify_display(std::span<const model::Segment> segments, const model::Trajectory& trajectory,
                             backend::JudgeBackend& backend, std::size_t fan_out = 1);

struct InteractionResult {
  std::vector<model::VerifiedDefect> verified;  // canonical order
  bool trigger = false;
  std::vector<model::AuditEntry> diagnostics;
};

/// Walks each segment's transitions in order with a history reset at every
/// segment boundary. The history passed to the backend already contains the
/// transition being judged. Findings whose step falls outside the current
/// segment are discarded and logged; they do not set trigger.
///
/// With `unified` the merged display+interaction judgment is used and
/// findings may carry any fault mode.
InteractionResult verify_interaction(std::span<const model::Segment> segments, const model::Trajectory& trajectory,
                                     const model::NavigationTask& task, const model::TestBasis& basis,
                                     backend::JudgeBackend& backend, bool unified = false);

enum class ConsistencyMode { Deterministic, Model };

std::string_view to_string(ConsistencyMode mode) noexcept;
std::optional<ConsistencyMode> parse_consistency_mode(std::string_view text) noexcept;

struct ConsistencyOptions {
  ConsistencyMode mode = ConsistencyMode::Deterministic;
  std::size_t window = 1;  // deterministic mode only
  backend::KeywordMap keywords = backend::default_keywords();
  /// Only findings of the preset fault mode can support a claim.
  bool strict_fault_mode = false;
};

/// Whether one claim agrees with at least one finding. `preset` is only
/// consulted under strict_fault_mode. `backend` is required in model mode.
bool claim_supported(const model::DefectClaim& claim, std::span<const model::VerifiedDefect> verified,
                     const ConsistencyOptions& options, model::FaultMode preset,
                     backend::JudgeBackend* backend);

/// True iff some claim of the report agrees with some finding.
bool check_consistency(const model::DefectReport& report, std::span<const model::VerifiedDefect> verified,
                       const ConsistencyOptions& options, model::FaultMode preset,
                       backend::JudgeBackend* backend);

}  // namespace judge::verify
