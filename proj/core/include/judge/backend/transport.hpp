#pragma once

#include <chrono>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <string>

#include "judge/backend/messages.hpp"
#include "judge/backend/schemas.hpp"

namespace judge::backend {

struct ChatRequest {
  std::string model;
  MessageSequence messages;
  SchemaId schema = SchemaId::Match;
};

/// Identity of a request for cassette lookup: SHA-256 over the canonical
/// request (model, temperature, schema, messages with image digests).
std::string request_hash(const ChatRequest& request);

/// Chat-completion request body: temperature 0, one choice.
nlohmann::json wire_body(const ChatRequest& request);

/// choices[0].message.content of a chat-completion response body.
/// Throws std::invalid_argument when the body has no such field.
std::string extract_content(std::string_view response_body);

/// Moves one request to a judge model and returns the raw response body.
/// Throws TransportError for retryable failures and AuthError for 401/403.
class Transport {
 public:
  virtual ~Transport() = default;
  virtual std::string exchange(const ChatRequest& request) = 0;
};

struct HttpSettings {
  std::string base_url;  // e.g. http://127.0.0.1:8000/v1
  std::string api_key;
  std::chrono::seconds timeout{60};
};

/// POSTs to <base_url>/chat/completions.
class HttpTransport final : public Transport {
 public:
  explicit HttpTransport(HttpSettings settings);
  std::string exchange(const ChatRequest& request) override;

 private:
  HttpSettings settings_;
  std::string scheme_host_port_;
  std::string path_prefix_;
};

/// One exchange per line: {"request_hash": ..., "response_body": ...}.
class Cassette {
 public:
  static Cassette load(const std::filesystem::path& file);

  const std::string* find(const std::string& hash) const;
  void add(std::string hash, std::string response_body);
  std::size_t size() const noexcept { return entries_.size(); }
  void save(const std::filesystem::path& file) const;

 private:
  std::map<std::string, std::string> entries_;
};

/// Replays recorded responses; unknown requests fail as TransportError.
class CassetteTransport final : public Transport {
 public:
  explicit CassetteTransport(Cassette cassette) : cassette_(std::move(cassette)) {}
  std::string exchange(const ChatRequest& request) override;

 private:
  Cassette cassette_;
};

/// Forwards to another transport and appends each exchange to a cassette file.
class RecordingTransport final : public Transport {
 public:
  RecordingTransport(std::unique_ptr<Transport> inner, std::filesystem::path file);
  std::string exchange(const ChatRequest& request) override;

 private:
  std::unique_ptr<Transport> inner_;
  std::filesystem::path file_;
  std::mutex mutex_;
};

}  // namespace judge::backend
