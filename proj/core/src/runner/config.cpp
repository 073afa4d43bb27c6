#include <fnmatch.h>

#include <algorithm>
#include <charconv>

#include "judge/backend/errors.hpp"
#include "judge/runner/config.hpp"

#ifndef JUDGE_VERSION
#define JUDGE_VERSION "0.0.0"
#endif

namespace judge::runner {

std::string_view version() noexcept { return JUDGE_VERSION; }

bool glob_match(const std::string& pattern, const std::string& text) {
  return ::fnmatch(pattern.c_str(), text.c_str(), 0) == 0;
}

std::vector<std::size_t> parse_k_list(std::string_view text) {
  std::vector<std::size_t> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    const std::string_view item = text.substr(pos, comma - pos);
    std::size_t value = 0;
    const auto [end, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
    if (item.empty() || ec != std::errc{} || end != item.data() + item.size() || value == 0) {
      throw backend::ConfigError("invalid k list '" + std::string(text) + "': expected positive integers");
    }
    out.push_back(value);
    pos = comma + 1;
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

void RunConfig::validate() const {
  namespace fs = std::filesystem;
  if (cases_dir.empty() || !fs::is_directory(cases_dir)) {
    throw backend::ConfigError("cases directory does not exist: " + cases_dir.string());
  }
  if (trajectories_dir.empty() || !fs::is_directory(trajectories_dir)) {
    throw backend::ConfigError("trajectories directory does not exist: " + trajectories_dir.string());
  }
  if (output_dir.empty()) throw backend::ConfigError("output directory is required");
  if (k_values.empty()) throw backend::ConfigError("at least one k value is required");
  for (std::size_t k : k_values) {
    if (k == 0) throw backend::ConfigError("k values must be positive");
  }
  if (concurrency == 0) throw backend::ConfigError("concurrency must be at least 1");
  if (judge.display_fan_out == 0) throw backend::ConfigError("display fan-out must be at least 1");
  backend.validate();
}

metrics::ReportConfig RunConfig::report_config() const {
  metrics::ReportConfig rc;
  rc.backend = std::string(backend::to_string(backend.kind));
  rc.judge_model = backend.kind == backend::BackendKind::Mock ? "" : backend.model_name;
  rc.k_values = k_values;
  rc.no_retrieval = judge.no_retrieval;
  rc.unified_verifier = judge.unified_verifier;
  rc.consistency = std::string(verify::to_string(judge.consistency.mode));
  if (judge.consistency.strict_fault_mode) rc.consistency += "+strict";
  rc.routing = judge.routing == verify::VerifierRouting::RunBoth ? "run_both" : "by_case";
  rc.averaging = averaging;
  return rc;
}

}  // namespace judge::runner
