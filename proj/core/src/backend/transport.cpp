#include "judge/backend/transport.hpp"

#include <httplib.h>

#include <fstream>
#include <regex>

#include "judge/backend/config.hpp"
#include "judge/backend/errors.hpp"
#include "util/encoding.hpp"

namespace judge::backend {

using nlohmann::json;

std::string request_hash(const ChatRequest& request) {
  const json canonical{{"model", request.model},
                       {"temperature", BackendConfig::kTemperature},
                       {"schema", to_string(request.schema)},
                       {"messages", canonical_json(request.messages)}};
  return util::sha256_hex(canonical.dump());
}

json wire_body(const ChatRequest& request) {
  return json{{"model", request.model},
              {"temperature", BackendConfig::kTemperature},
              {"n", 1},
              {"stream", false},
              {"messages", wire_json(request.messages)}};
}

std::string extract_content(std::string_view response_body) {
  json body = json::parse(response_body, nullptr, false);
  if (body.is_discarded()) throw std::invalid_argument("response body is not JSON");
  const json* content = nullptr;
  if (body.contains("choices") && body["choices"].is_array() && !body["choices"].empty()) {
    const json& choice = body["choices"][0];
    if (choice.contains("message") && choice["message"].contains("content")) {
      content = &choice["message"]["content"];
    }
  }
  if (content == nullptr || !content->is_string()) {
    throw std::invalid_argument("response has no choices[0].message.content string");
  }
  return content->get<std::string>();
}

HttpTransport::HttpTransport(HttpSettings settings) : settings_(std::move(settings)) {
  static const std::regex url(R"(^(https?://[^/]+)(/.*)?$)");
  std::smatch match;
  if (!std::regex_match(settings_.base_url, match, url)) {
    throw ConfigError("base_url must look like http(s)://host[:port][/path], got '" + settings_.base_url + "'");
  }
  scheme_host_port_ = match[1].str();
  path_prefix_ = match[2].matched ? match[2].str() : std::string{};
  while (!path_prefix_.empty() && path_prefix_.back() == '/') path_prefix_.pop_back();
}

std::string HttpTransport::exchange(const ChatRequest& request) {
  httplib::Client client(scheme_host_port_);
  const auto timeout = static_cast<time_t>(settings_.timeout.count());
  client.set_connection_timeout(timeout, 0);
  client.set_read_timeout(timeout, 0);
  client.set_write_timeout(timeout, 0);
  if (!settings_.api_key.empty()) client.set_bearer_token_auth(settings_.api_key);

  auto result = client.Post(path_prefix_ + "/chat/completions", wire_body(request).dump(), "application/json");
  if (!result) {
    throw TransportError("request to " + scheme_host_port_ + " failed: " + httplib::to_string(result.error()));
  }
  if (result->status == 401 || result->status == 403) {
    throw AuthError("judge endpoint rejected credentials (HTTP " + std::to_string(result->status) + ")");
  }
  if (result->status != 200) {
    throw TransportError("judge endpoint returned HTTP " + std::to_string(result->status));
  }
  return result->body;
}

Cassette Cassette::load(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw ConfigError("cannot open cassette " + file.string());
  Cassette cassette;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json record = json::parse(line, nullptr, false);
    if (record.is_discarded() || !record.contains("request_hash") || !record.contains("response_body") ||
        !record["request_hash"].is_string() || !record["response_body"].is_string()) {
      throw ConfigError(file.string() + ":" + std::to_string(line_no) + ": malformed cassette record");
    }
    cassette.add(record["request_hash"].get<std::string>(), record["response_body"].get<std::string>());
  }
  return cassette;
}

const std::string* Cassette::find(const std::string& hash) const {
  auto it = entries_.find(hash);
  return it == entries_.end() ? nullptr : &it->second;
}

void Cassette::add(std::string hash, std::string response_body) {
  entries_.insert_or_assign(std::move(hash), std::move(response_body));
}

void Cassette::save(const std::filesystem::path& file) const {
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write cassette " + file.string());
  for (const auto& [hash, body] : entries_) {
    out << json{{"request_hash", hash}, {"response_body", body}}.dump() << '\n';
  }
}

std::string CassetteTransport::exchange(const ChatRequest& request) {
  const std::string hash = request_hash(request);
  if (const std::string* body = cassette_.find(hash)) return *body;
  throw TransportError("no recorded response for request " + hash);
}

RecordingTransport::RecordingTransport(std::unique_ptr<Transport> inner, std::filesystem::path file)
    : inner_(std::move(inner)), file_(std::move(file)) {}

std::string RecordingTransport::exchange(const ChatRequest& request) {
  std::string body = inner_->exchange(request);
  const std::string hash = request_hash(request);
  std::lock_guard lock(mutex_);
  std::ofstream out(file_, std::ios::binary | std::ios::app);
  if (!out) throw std::runtime_error("cannot append to cassette " + file_.string());
  out << json{{"request_hash", hash}, {"response_body", body}}.dump() << '\n';
  return body;
}

}  // namespace judge::backend
