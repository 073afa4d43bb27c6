#include <algorithm>
#include <map>
#include <tuple>

#include "judge/metrics/report.hpp"

namespace judge::metrics {

std::string_view to_string(Averaging averaging) noexcept {
  return averaging == Averaging::Macro ? "macro" : "micro";
}

namespace {

bool is_aggregate(Column column) {
  return column == Column::Display || column == Column::Interaction || column == Column::Overall;
}

Scores macro_scores(const StageTable& table, Column aggregate) {
  Scores out;
  std::size_t members = 0;
  for (Column column : kAllColumns) {
    if (is_aggregate(column) || !member_of(column, aggregate)) continue;
    const Cell& cell = table.at(column);
    if (cell.scores.empty) continue;
    ++members;
    out.recall += cell.scores.recall;
    out.precision += cell.scores.precision;
    out.f1 += cell.scores.f1;
    out.degenerate = out.degenerate || cell.scores.degenerate;
  }
  if (members == 0) {
    out.empty = true;
    out.degenerate = true;
    return out;
  }
  out.recall /= static_cast<double>(members);
  out.precision /= static_cast<double>(members);
  out.f1 /= static_cast<double>(members);
  return out;
}

}  // namespace

BenchmarkReport aggregate_report(std::span<const RunOutcome> outcomes, const ReportConfig& config) {
  BenchmarkReport report;
  report.config = config;
  std::sort(report.config.k_values.begin(), report.config.k_values.end());
  report.config.k_values.erase(std::unique(report.config.k_values.begin(), report.config.k_values.end()),
                               report.config.k_values.end());

  std::map<std::string, std::map<UnitKey, std::vector<RunOutcome>>> by_model;
  for (const auto& run : outcomes) {
    by_model[run.model_id][run.unit()].push_back(run);
    if (!run.scored()) {
      report.unscored.push_back({run.model_id, run.case_id, run.task_id, run.run_index, run.unscored_reason});
    }
  }
  std::sort(report.unscored.begin(), report.unscored.end(), [](const UnscoredRun& a, const UnscoredRun& b) {
    return std::tie(a.model_id, a.case_id, a.task_id, a.run_index, a.reason) <
           std::tie(b.model_id, b.case_id, b.task_id, b.run_index, b.reason);
  });

  for (auto& [model_id, units] : by_model) {
    ModelReport mr;
    mr.model_id = model_id;
    for (auto& [unit, runs] : units) {
      const bool any_scored = std::any_of(runs.begin(), runs.end(), [](const RunOutcome& r) { return r.scored(); });
      if (any_scored) {
        ++mr.units;
      } else {
        ++mr.excluded_units;
      }
      for (const auto& r : runs) (r.scored() ? mr.scored_runs : mr.unscored_runs)++;
    }

    for (std::size_t k : report.config.k_values) {
      PassAtK block;
      block.k = k;
      std::vector<StageOutcome> stage_outcomes;
      for (Stage stage : kAllStages) {
        for (auto& [unit, runs] : units) {
          if (auto o = collapse_pass_at_k(runs, k, stage)) stage_outcomes.push_back(*o);
        }
      }
      const ConfusionTable table = confusion(stage_outcomes);
      for (Stage stage : kAllStages) {
        StageTable& st = block.stages[static_cast<std::size_t>(stage)];
        st.stage = stage;
        const bool evaluated = !(config.no_retrieval && stage != Stage::Detect);
        for (Column column : kAllColumns) {
          Cell& cell = st.cells[static_cast<std::size_t>(column)];
          cell.evaluated = evaluated;
          if (!evaluated) continue;
          cell.counts = table.at({stage, column});
          cell.scores = recall_f1(cell.counts);
        }
        if (evaluated && config.averaging == Averaging::Macro) {
          for (Column column : kAllColumns) {
            if (is_aggregate(column)) {
              st.cells[static_cast<std::size_t>(column)].scores = macro_scores(st, column);
            }
          }
        }
      }
      mr.pass_at.push_back(block);
    }
    report.models.push_back(std::move(mr));
  }
  return report;
}

}  // namespace judge::metrics
