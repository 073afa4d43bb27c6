#pragma once

#include <memory>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "judge/backend/backend.hpp"

namespace judge::runner {

struct AssistResponse {
  int status = 200;
  nlohmann::json body;
};

/// Request handling for the assist service, independent of the HTTP layer.
///
/// POST /verify/display      {"observation": {...}}
/// POST /verify/interaction  {"task": {...}, "basis": {...}, "history": [...], "transition": {...}}
/// GET  /healthz
///
/// Observations carry "text" and/or "image_base64"; nothing is read from disk.
/// Malformed requests get 400 before any backend call; backend failures 502.
class AssistHandler {
 public:
  explicit AssistHandler(backend::JudgeBackend& backend) : backend_(backend) {}

  AssistResponse handle(std::string_view method, std::string_view path, std::string_view body);

 private:
  backend::JudgeBackend& backend_;
};

class AssistServer {
 public:
  explicit AssistServer(backend::JudgeBackend& backend);
  ~AssistServer();
  AssistServer(const AssistServer&) = delete;
  AssistServer& operator=(const AssistServer&) = delete;

  /// Binds without serving. Returns the bound port; port 0 picks a free one.
  int bind(const std::string& host, int port);
  /// Serves until stop(). Call after bind().
  void serve();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace judge::runner
