#pragma once

#include <string>
#include <vector>

#include "judge/backend/backend.hpp"
#include "judge/metrics/report.hpp"
#include "judge/model/bundle.hpp"
#include "judge/runner/config.hpp"

namespace judge::runner {

enum ExitCode : int {
  kExitOk = 0,
  kExitValidation = 1,
  kExitUnscored = 2,
  kExitConfig = 3,
};

struct BundleProblem {
  std::filesystem::path bundle;
  std::vector<model::Violation> violations;
};

struct RunSummary {
  int exit_code = kExitOk;
  metrics::BenchmarkReport report;
  std::vector<metrics::RunOutcome> outcomes;  // canonical order
  std::vector<BundleProblem> problems;
  std::vector<std::string> warnings;
};

/// Judges every discovered run with the given backend and writes report.json,
/// summary.csv, summary.md and verdicts.jsonl into config.output_dir.
RunSummary run_evaluation(const RunConfig& config, backend::JudgeBackend& backend);

/// Same, with the backend built from config.backend.
RunSummary run_evaluation(const RunConfig& config);

}  // namespace judge::runner
