#pragma once

#include <chrono>
#include <filesystem>
#include <optional>
#include <string>

#include "judge/backend/mock_rules.hpp"

namespace judge::backend {

enum class BackendKind { Http, Mock };

std::string_view to_string(BackendKind kind) noexcept;
std::optional<BackendKind> parse_backend_kind(std::string_view text) noexcept;

inline constexpr const char* kApiKeyEnv = "JUDGE_API_KEY";
inline constexpr const char* kBaseUrlEnv = "JUDGE_BASE_URL";

struct BackendConfig {
  BackendKind kind = BackendKind::Mock;
  std::string base_url;
  std::string model_name;
  std::string api_key_env = kApiKeyEnv;  // the key itself is never stored in config
  int max_retries = 2;
  std::chrono::seconds request_timeout{60};
  int concurrency_budget = 4;
  static constexpr double kTemperature = 0.0;

  std::optional<MockRuleTable> mock_rules;
  /// Replay recorded exchanges instead of calling base_url.
  std::optional<std::filesystem::path> replay_cassette;
  /// Append live exchanges to this cassette.
  std::optional<std::filesystem::path> record_cassette;

  /// Fills base_url from JUDGE_BASE_URL when unset.
  void apply_environment();
  /// Throws ConfigError.
  void validate() const;
  std::string resolve_api_key() const;
};

}  // namespace judge::backend
