#pragma once

#include <random>
#include <vector>

#include "judge/metrics/metrics.hpp"
#include "judge/model/types.hpp"
#include "judge/verify/judge.hpp"

namespace judge::testing {

/// One randomized end-to-end configuration for the mock backend.
struct Scenario {
  model::EvaluationCase ec;
  model::Trajectory trajectory;
  verify::JudgeOptions options;
};

Scenario random_scenario(std::mt19937_64& rng);

/// A verdict satisfying every stage invariant, drawn at random.
model::Verdict random_verdict(std::mt19937_64& rng, model::FaultMode mode);

/// Runs for a handful of models, cases and tasks; some runs unscored.
std::vector<metrics::RunOutcome> random_outcomes(std::mt19937_64& rng);

}  // namespace judge::testing
