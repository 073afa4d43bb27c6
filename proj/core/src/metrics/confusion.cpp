#include "judge/metrics/metrics.hpp"

namespace judge::metrics {

std::string_view to_string(Column column) noexcept {
  switch (column) {
    case Column::CR:
      return "CR";
    case Column::EL:
      return "EL";
    case Column::NLE:
      return "NLE";
    case Column::ONR:
      return "ONR";
    case Column::UTR:
      return "UTR";
    case Column::Display:
      return "display";
    case Column::Interaction:
      return "interaction";
    case Column::Overall:
      return "overall";
  }
  return "unknown";
}

Column column_of(model::FaultMode mode) noexcept {
  switch (mode) {
    case model::FaultMode::ContentRendering:
      return Column::CR;
    case model::FaultMode::ElementLayout:
      return Column::EL;
    case model::FaultMode::NavigationLogicError:
      return Column::NLE;
    case model::FaultMode::OperationNoResponse:
      return Column::ONR;
    case model::FaultMode::UnexpectedTaskResult:
      return Column::UTR;
  }
  return Column::Overall;
}

bool member_of(Column fault_column, Column aggregate) noexcept {
  switch (aggregate) {
    case Column::Display:
      return fault_column == Column::CR || fault_column == Column::EL;
    case Column::Interaction:
      return fault_column == Column::NLE || fault_column == Column::ONR || fault_column == Column::UTR;
    case Column::Overall:
      return fault_column != Column::Display && fault_column != Column::Interaction &&
             fault_column != Column::Overall;
    default:
      return fault_column == aggregate;
  }
}

ConfusionTable confusion(std::span<const StageOutcome> outcomes) {
  ConfusionTable table;
  for (Stage stage : kAllStages) {
    for (Column column : kAllColumns) table[{stage, column}] = {};
  }
  for (const auto& outcome : outcomes) {
    ConfusionCounts delta;
    if (outcome.success) {
      delta.tp = 1;
    } else {
      delta.fn = 1;
    }
    if (outcome.stage == Stage::Detect && outcome.false_report) delta.fp = 1;
    const Column own = column_of(outcome.fault_mode);
    for (Column column : kAllColumns) {
      if (member_of(own, column)) table[{outcome.stage, column}] += delta;
    }
  }
  return table;
}

Scores recall_f1(const ConfusionCounts& counts) noexcept {
  Scores s;
  const std::size_t positives = counts.tp + counts.fn;
  const std::size_t predicted = counts.tp + counts.fp;
  s.empty = positives == 0 && counts.fp == 0;
  if (positives == 0 || predicted == 0) s.degenerate = true;
  s.recall = positives == 0 ? 0.0 : static_cast<double>(counts.tp) / static_cast<double>(positives);
  s.precision = predicted == 0 ? 0.0 : static_cast<double>(counts.tp) / static_cast<double>(predicted);
  const double denom = s.recall + s.precision;
  if (denom == 0.0) {
    s.degenerate = true;
    s.f1 = 0.0;
  } else {
    s.f1 = 2.0 * s.precision * s.recall / denom;
  }
  return s;
}

}  // namespace judge::metrics
