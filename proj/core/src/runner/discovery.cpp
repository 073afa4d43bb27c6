#include <algorithm>
#include <charconv>
#include <optional>

#include "judge/runner/discovery.hpp"

namespace judge::runner {

namespace fs = std::filesystem;

namespace {

std::optional<std::size_t> run_index_of(const std::string& name) {
  constexpr std::string_view prefix = "run_";
  if (name.size() <= prefix.size() || name.compare(0, prefix.size(), prefix) != 0) return std::nullopt;
  std::size_t value = 0;
  const char* begin = name.data() + prefix.size();
  const char* end = name.data() + name.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end || value == 0) return std::nullopt;
  return value;
}

std::vector<fs::path> subdirectories(const fs::path& dir) {
  std::vector<fs::path> out;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_directory()) out.push_back(entry.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<RunLocation> discover_runs(const fs::path& root) {
  std::vector<RunLocation> out;
  if (!fs::is_directory(root)) return out;
  for (const auto& model_dir : subdirectories(root)) {
    for (const auto& case_dir : subdirectories(model_dir)) {
      for (const auto& task_dir : subdirectories(case_dir)) {
        for (const auto& run_dir : subdirectories(task_dir)) {
          const auto index = run_index_of(run_dir.filename().string());
          if (!index) continue;
          out.push_back({model_dir.filename().string(), case_dir.filename().string(), task_dir.filename().string(),
                         *index, run_dir});
        }
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace judge::runner
