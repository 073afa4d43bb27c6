#pragma once

#include <string>
#include <variant>

#include "judge/backend/backend.hpp"
#include "judge/model/types.hpp"
#include "judge/model/verdict.hpp"
#include "judge/verify/verifiers.hpp"

namespace judge::verify {

enum class VerifierRouting {
  ByCase,   // display-class cases run the display verifier, interaction-class the interaction verifier
  RunBoth,  // open-set scanning: both verifiers on every case
};

struct JudgeOptions {
  VerifierRouting routing = VerifierRouting::ByCase;
  bool no_retrieval = false;      // whole trajectory as one segment
  bool unified_verifier = false;  // merged prompt instead of typed verifiers
  ConsistencyOptions consistency;
  std::size_t display_fan_out = 1;
};

/// The backend failed; the run is excluded from metric denominators.
struct Unscored {
  std::string reason;
};

using JudgeOutcome = std::variant<model::Verdict, Unscored>;

/// Full pipeline for one run: retrieval, the routed verifier(s), and the
/// report consistency check. Backend failures anywhere yield Unscored.
JudgeOutcome judge_trajectory(const model::EvaluationCase& ec, const model::NavigationTask& task,
                              const model::Trajectory& trajectory, backend::JudgeBackend& backend,
                              const JudgeOptions& options);

}  // namespace judge::verify
