#include <algorithm>
#include <stdexcept>

#include "judge/verify/verifiers.hpp"

namespace judge::verify {

std::string_view to_string(ConsistencyMode mode) noexcept {
  return mode == ConsistencyMode::Model ? "model" : "deterministic";
}

std::optional<ConsistencyMode> parse_consistency_mode(std::string_view text) noexcept {
  if (text == "deterministic") return ConsistencyMode::Deterministic;
  if (text == "model") return ConsistencyMode::Model;
  return std::nullopt;
}

bool claim_supported(const model::DefectClaim& claim, std::span<const model::VerifiedDefect> verified,
                     const ConsistencyOptions& options, model::FaultMode preset, backend::JudgeBackend* backend) {
  for (const model::VerifiedDefect& defect : verified) {
    if (options.strict_fault_mode && defect.fault_mode != preset) continue;
    if (options.mode == ConsistencyMode::Deterministic) {
      if (backend::claim_consistent(claim, defect, options.window, options.keywords)) return true;
    } else {
      if (backend == nullptr) throw std::invalid_argument("model consistency mode requires a backend");
      if (backend->judge_consistency(claim, defect).consistent) return true;
    }
  }
  return false;
}

bool check_consistency(const model::DefectReport& report, std::span<const model::VerifiedDefect> verified,
                       const ConsistencyOptions& options, model::FaultMode preset, backend::JudgeBackend* backend) {
  return std::any_of(report.claims.begin(), report.claims.end(), [&](const model::DefectClaim& claim) {
    return claim_supported(claim, verified, options, preset, backend);
  });
}

}  // namespace judge::verify
