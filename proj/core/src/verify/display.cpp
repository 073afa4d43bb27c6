#include <algorithm>
#include <future>

#include "judge/verify/verifiers.hpp"

namespace judge::verify {

namespace {

struct StateJob {
  std::size_t segment = 0;
  std::size_t step = 0;
};

}  // namespace

DisplayResult verify_display(std::span<const model::Segment> segments, const model::Trajectory& trajectory,
                             backend::JudgeBackend& backend, std::size_t fan_out) {
  std::vector<StateJob> jobs;
  for (std::size_t i = 0; i < segments.size(); ++i) {
    for (std::size_t t = segments[i].start; t <= segments[i].end && t <= trajectory.size(); ++t) {
      jobs.push_back({i, t});
    }
  }

  std::vector<backend::DisplayFinding> findings(jobs.size());
  const std::size_t width = std::max<std::size_t>(1, fan_out);
  if (width == 1) {
    for (std::size_t j = 0; j < jobs.size(); ++j) {
      findings[j] = backend.verify_display_state(trajectory.at(jobs[j].step).post_observation());
    }
  } else {
    for (std::size_t begin = 0; begin < jobs.size(); begin += width) {
      const std::size_t end = std::min(jobs.size(), begin + width);
      std::vector<std::future<backend::DisplayFinding>> wave;
      for (std::size_t j = begin; j < end; ++j) {
        wave.push_back(std::async(std::launch::async, [&, j] {
          return backend.verify_display_state(trajectory.at(jobs[j].step).post_observation());
        }));
      }
      // get() on every future before rethrowing so no task outlives this frame.
      std::exception_ptr failure;
      for (std::size_t j = begin; j < end; ++j) {
        try {
          findings[j] = wave[j - begin].get();
        } catch (...) {
          if (!failure) failure = std::current_exception();
        }
      }
      if (failure) std::rethrow_exception(failure);
    }
  }

  DisplayResult result;
  for (std::size_t j = 0; j < jobs.size(); ++j) {
    const backend::DisplayFinding& finding = findings[j];
    if (!finding.has_defect) continue;
    for (const backend::DisplayDefect& defect : finding.defects) {
      if (!defect.type) continue;
      result.verified.push_back(
          model::VerifiedDefect{*defect.type, jobs[j].step, defect.evidence, defect.reason, defect.location_hint});
    }
  }
  std::sort(result.verified.begin(), result.verified.end(), model::canonical_less);
  for (const model::VerifiedDefect& defect : result.verified) {
    result.diagnostics.push_back({"display.finding", "step=" + std::to_string(defect.step) + " type=" +
                                                         std::string(model::short_code(defect.fault_mode)) +
                                                         " reason=" + defect.reason});
  }
  result.diagnostics.push_back({"display.states", std::to_string(jobs.size())});
  return result;
}

}  // namespace judge::verify
