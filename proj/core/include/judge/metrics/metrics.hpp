#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "judge/model/fault_mode.hpp"
#include "judge/model/verdict.hpp"

namespace judge::metrics {

enum class Stage { Reach, Trigger, Detect };
inline constexpr std::array<Stage, 3> kAllStages{Stage::Reach, Stage::Trigger, Stage::Detect};
std::string_view to_string(Stage stage) noexcept;

/// Report columns, in table order.
enum class Column { CR, EL, NLE, ONR, UTR, Display, Interaction, Overall };
inline constexpr std::array<Column, 8> kAllColumns{Column::CR,  Column::EL,      Column::NLE,         Column::ONR,
                                                   Column::UTR, Column::Display, Column::Interaction, Column::Overall};
std::string_view to_string(Column column) noexcept;
Column column_of(model::FaultMode mode) noexcept;
/// Whether a per-fault-mode column belongs to an aggregate column.
bool member_of(Column fault_column, Column aggregate) noexcept;

struct UnitKey {
  std::string model_id;
  std::string case_id;
  std::string task_id;

  friend auto operator<=>(const UnitKey&, const UnitKey&) = default;
  friend bool operator==(const UnitKey&, const UnitKey&) = default;
};

/// One judged (or unscored) trajectory run.
struct RunOutcome {
  std::string model_id;
  std::string case_id;
  std::string task_id;
  std::size_t run_index = 1;
  model::FaultMode fault_mode = model::FaultMode::ContentRendering;
  std::optional<model::Verdict> verdict;  // empty when unscored
  std::string unscored_reason;

  bool scored() const noexcept { return verdict.has_value(); }
  UnitKey unit() const { return {model_id, case_id, task_id}; }
};

/// Whether a single verdict succeeds at a stage. Display-class trigger
/// inherits reach.
bool stage_success(const model::Verdict& verdict, Stage stage);

struct StageOutcome {
  UnitKey unit;
  model::FaultMode fault_mode = model::FaultMode::ContentRendering;
  Stage stage = Stage::Reach;
  bool success = false;
  /// Every one of the k runs failed detect and at least one of them made a
  /// claim no verified defect supported.
  bool false_report = false;
};

/// Pass@k for one unit: succeeds if any of the first k scored runs (by
/// run_index) succeeds. nullopt when the unit has no scored run.
std::optional<StageOutcome> collapse_pass_at_k(std::span<const RunOutcome> runs, std::size_t k, Stage stage);

struct ConfusionCounts {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;

  ConfusionCounts& operator+=(const ConfusionCounts& other) noexcept {
    tp += other.tp;
    fp += other.fp;
    fn += other.fn;
    return *this;
  }
  friend bool operator==(const ConfusionCounts&, const ConfusionCounts&) = default;
};

struct CellKey {
  Stage stage = Stage::Reach;
  Column column = Column::Overall;

  friend auto operator<=>(const CellKey&, const CellKey&) = default;
};

using ConfusionTable = std::map<CellKey, ConfusionCounts>;

/// tp = successes, fn = failures, fp = false reports (detect stage only).
/// Every (stage, column) cell is present; aggregate columns pool their members.
ConfusionTable confusion(std::span<const StageOutcome> outcomes);

struct Scores {
  double recall = 0.0;
  double precision = 0.0;
  double f1 = 0.0;
  bool empty = false;       // no units in the cell
  bool degenerate = false;  // some ratio had a zero denominator and was set to 0
};

Scores recall_f1(const ConfusionCounts& counts) noexcept;

}  // namespace judge::metrics
