#pragma once

#include <compare>
#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

namespace judge::runner {

/// One run directory: <root>/<model>/<case>/<task>/run_<n>/
struct RunLocation {
  std::string model_id;
  std::string case_id;
  std::string task_id;
  std::size_t run_index = 0;
  std::filesystem::path path;

  friend auto operator<=>(const RunLocation&, const RunLocation&) = default;
  friend bool operator==(const RunLocation&, const RunLocation&) = default;
};

/// Every run directory below root in canonical order. Directories that do
/// not follow the layout are skipped.
std::vector<RunLocation> discover_runs(const std::filesystem::path& root);

}  // namespace judge::runner
