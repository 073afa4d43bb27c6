#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "judge/metrics/metrics.hpp"

namespace judge::metrics {

enum class Averaging { Micro, Macro };
std::string_view to_string(Averaging averaging) noexcept;

/// Settings echoed into the report. Paths and worker counts are not included.
struct ReportConfig {
  std::string backend = "mock";
  std::string judge_model;
  std::vector<std::size_t> k_values{1, 3};
  bool no_retrieval = false;
  bool unified_verifier = false;
  std::string consistency = "deterministic";
  std::string routing = "by_case";
  Averaging averaging = Averaging::Micro;
};

struct Cell {
  bool evaluated = true;
  ConfusionCounts counts;
  Scores scores;
};

struct StageTable {
  Stage stage = Stage::Reach;
  std::array<Cell, kAllColumns.size()> cells{};

  const Cell& at(Column column) const { return cells[static_cast<std::size_t>(column)]; }
};

struct PassAtK {
  std::size_t k = 1;
  std::array<StageTable, kAllStages.size()> stages{};

  const StageTable& at(Stage stage) const { return stages[static_cast<std::size_t>(stage)]; }
};

struct ModelReport {
  std::string model_id;
  std::size_t units = 0;           // units with at least one scored run
  std::size_t excluded_units = 0;  // units with no scored run
  std::size_t scored_runs = 0;
  std::size_t unscored_runs = 0;
  std::vector<PassAtK> pass_at;
};

struct UnscoredRun {
  std::string model_id;
  std::string case_id;
  std::string task_id;
  std::size_t run_index = 0;
  std::string reason;
};

struct BenchmarkReport {
  ReportConfig config;
  std::vector<ModelReport> models;  // sorted by model_id
  std::vector<UnscoredRun> unscored;
};

/// Deterministic regardless of the order of `outcomes`.
BenchmarkReport aggregate_report(std::span<const RunOutcome> outcomes, const ReportConfig& config);

nlohmann::json report_json(const BenchmarkReport& report);
std::string summary_csv(const BenchmarkReport& report);
std::string summary_markdown(const BenchmarkReport& report);

/// Writes report.json, summary.csv and summary.md into the directory.
void write_report_files(const BenchmarkReport& report, const std::filesystem::path& out_dir);

}  // namespace judge::metrics
