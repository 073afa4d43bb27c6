#include <algorithm>
#include <atomic>
#include <fstream>
#include <map>
#include <thread>

#include "judge/backend/errors.hpp"
#include "judge/model/json.hpp"
#include "judge/runner/discovery.hpp"
#include "judge/runner/evaluation.hpp"

namespace judge::runner {

namespace fs = std::filesystem;

namespace {

struct WorkItem {
  RunLocation location;
  const model::EvaluationCase* ec = nullptr;
  const model::NavigationTask* task = nullptr;
  model::Trajectory trajectory;
};

bool passes_filters(const Filters& filters, const RunLocation& loc, const model::EvaluationCase* ec) {
  if (!glob_match(filters.model_glob, loc.model_id)) return false;
  if (!glob_match(filters.case_glob, loc.case_id)) return false;
  if (filters.fault_mode_glob != "*") {
    if (ec == nullptr) return false;
    const std::string code(model::short_code(ec->fault_mode));
    const std::string dotted(model::to_string(ec->fault_mode));
    if (!glob_match(filters.fault_mode_glob, code) && !glob_match(filters.fault_mode_glob, dotted)) return false;
  }
  return true;
}

std::vector<model::Violation> layout_violations(const RunLocation& loc, const model::Trajectory& t) {
  std::vector<model::Violation> out;
  if (t.model_id != loc.model_id) {
    out.push_back({model::ViolationCode::CaseMismatch, "/model_id",
                   "trajectory names model '" + t.model_id + "' but lives under '" + loc.model_id + "'"});
  }
  if (t.case_id != loc.case_id) {
    out.push_back({model::ViolationCode::CaseMismatch, "/case_id",
                   "trajectory names case '" + t.case_id + "' but lives under '" + loc.case_id + "'"});
  }
  if (t.task_id != loc.task_id) {
    out.push_back({model::ViolationCode::CaseMismatch, "/task_id",
                   "trajectory names task '" + t.task_id + "' but lives under '" + loc.task_id + "'"});
  }
  return out;
}

nlohmann::json outcome_line(const metrics::RunOutcome& o) {
  nlohmann::json j{{"model_id", o.model_id},
                   {"case_id", o.case_id},
                   {"task_id", o.task_id},
                   {"run_index", o.run_index},
                   {"fault_mode", std::string(model::to_string(o.fault_mode))}};
  if (o.scored()) {
    j["verdict"] = *o.verdict;
  } else {
    j["unscored"] = o.unscored_reason;
  }
  return j;
}

void write_verdicts(const std::vector<metrics::RunOutcome>& outcomes, const fs::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  for (const auto& o : outcomes) out << outcome_line(o).dump() << '\n';
}

}  // namespace

RunSummary run_evaluation(const RunConfig& config, backend::JudgeBackend& backend) {
  config.validate();
  RunSummary summary;

  std::vector<model::EvaluationCase> cases;
  try {
    cases = model::load_cases(config.cases_dir);
  } catch (const model::ValidationError& e) {
    summary.problems.push_back({e.bundle(), e.violations()});
    summary.exit_code = kExitValidation;
    return summary;
  }
  std::map<std::string, const model::EvaluationCase*> case_index;
  for (const auto& ec : cases) case_index[ec.case_id] = &ec;

  std::vector<WorkItem> items;
  for (const auto& loc : discover_runs(config.trajectories_dir)) {
    const auto found = case_index.find(loc.case_id);
    const model::EvaluationCase* ec = found == case_index.end() ? nullptr : found->second;
    if (!glob_match(config.filters.model_glob, loc.model_id) || !glob_match(config.filters.case_glob, loc.case_id)) {
      continue;
    }
    if (ec == nullptr) {
      summary.problems.push_back(
          {loc.path, {{model::ViolationCode::CaseMismatch, "/", "no case named '" + loc.case_id + "'"}}});
      continue;
    }
    if (!passes_filters(config.filters, loc, ec)) continue;
    try {
      model::Trajectory t = model::validate_trajectory(loc.path, *ec);
      auto violations = layout_violations(loc, t);
      if (!violations.empty()) {
        summary.problems.push_back({loc.path, std::move(violations)});
        continue;
      }
      const model::NavigationTask* task = ec->find_task(t.task_id);
      items.push_back({loc, ec, task, std::move(t)});
    } catch (const model::ValidationError& e) {
      summary.problems.push_back({e.bundle(), e.violations()});
    }
  }

  if (items.empty() && summary.problems.empty()) {
    summary.warnings.push_back("no trajectory runs found under " + config.trajectories_dir.string());
  }

  std::vector<metrics::RunOutcome> outcomes(items.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < items.size(); i = next++) {
      const WorkItem& item = items[i];
      metrics::RunOutcome& o = outcomes[i];
      o.model_id = item.location.model_id;
      o.case_id = item.location.case_id;
      o.task_id = item.location.task_id;
      o.run_index = item.location.run_index;
      o.fault_mode = item.ec->fault_mode;
      try {
        auto result = verify::judge_trajectory(*item.ec, *item.task, item.trajectory, backend, config.judge);
        if (auto* verdict = std::get_if<model::Verdict>(&result)) {
          o.verdict = std::move(*verdict);
        } else {
          o.unscored_reason = std::get<verify::Unscored>(result).reason;
        }
      } catch (const std::runtime_error& e) {
        o.unscored_reason = e.what();
      }
    }
  };
  const std::size_t workers = std::min(config.concurrency, std::max<std::size_t>(items.size(), 1));
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
  }

  summary.report = metrics::aggregate_report(outcomes, config.report_config());
  summary.outcomes = std::move(outcomes);
  metrics::write_report_files(summary.report, config.output_dir);
  write_verdicts(summary.outcomes, config.output_dir / "verdicts.jsonl");

  const bool any_unscored = std::any_of(summary.outcomes.begin(), summary.outcomes.end(),
                                        [](const metrics::RunOutcome& o) { return !o.scored(); });
  if (!summary.problems.empty()) {
    summary.exit_code = kExitValidation;
  } else if (config.strict && any_unscored) {
    summary.exit_code = kExitUnscored;
  }
  return summary;
}

RunSummary run_evaluation(const RunConfig& config) {
  config.validate();
  auto backend = backend::make_backend(config.backend);
  return run_evaluation(config, *backend);
}

}  // namespace judge::runner
