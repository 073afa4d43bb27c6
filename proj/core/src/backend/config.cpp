#include "judge/backend/config.hpp"

#include <cstdlib>

#include "judge/backend/errors.hpp"

namespace judge::backend {

std::string_view to_string(BackendKind kind) noexcept { return kind == BackendKind::Http ? "http" : "mock"; }

std::optional<BackendKind> parse_backend_kind(std::string_view text) noexcept {
  if (text == "http") return BackendKind::Http;
  if (text == "mock") return BackendKind::Mock;
  return std::nullopt;
}

void BackendConfig::apply_environment() {
  if (base_url.empty()) {
    if (const char* env = std::getenv(kBaseUrlEnv); env != nullptr) base_url = env;
  }
}

void BackendConfig::validate() const {
  if (max_retries < 0) throw ConfigError("max_retries must be >= 0");
  if (concurrency_budget < 1) throw ConfigError("concurrency budget must be >= 1");
  if (request_timeout.count() < 1) throw ConfigError("request timeout must be >= 1 s");
  switch (kind) {
    case BackendKind::Http:
      if (model_name.empty()) throw ConfigError("http backend requires a model name");
      if (base_url.empty() && !replay_cassette) throw ConfigError("http backend requires a base URL");
      break;
    case BackendKind::Mock:
      if (!mock_rules) throw ConfigError("mock backend requires a rule table");
      break;
  }
}

std::string BackendConfig::resolve_api_key() const {
  if (api_key_env.empty()) return {};
  const char* value = std::getenv(api_key_env.c_str());
  return value == nullptr ? std::string{} : std::string(value);
}

}  // namespace judge::backend
