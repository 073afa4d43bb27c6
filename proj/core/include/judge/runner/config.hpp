#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "judge/backend/config.hpp"
#include "judge/metrics/report.hpp"
#include "judge/verify/judge.hpp"

namespace judge::runner {

std::string_view version() noexcept;

struct Filters {
  std::string model_glob = "*";
  std::string case_glob = "*";
  /// Matched against both the short code (CR) and the dotted id.
  std::string fault_mode_glob = "*";
};

struct RunConfig {
  std::filesystem::path cases_dir;
  std::filesystem::path trajectories_dir;
  std::filesystem::path output_dir;
  backend::BackendConfig backend;
  std::vector<std::size_t> k_values{1, 3};
  verify::JudgeOptions judge;
  metrics::Averaging averaging = metrics::Averaging::Micro;
  std::size_t concurrency = 1;
  std::uint64_t seed = 0;  // reserved; nothing is randomized yet
  Filters filters;
  bool strict = false;

  /// Throws backend::ConfigError.
  void validate() const;
  metrics::ReportConfig report_config() const;
};

/// Parses "1,3" into sorted unique values. Throws backend::ConfigError.
std::vector<std::size_t> parse_k_list(std::string_view text);

bool glob_match(const std::string& pattern, const std::string& text);

}  // namespace judge::runner
