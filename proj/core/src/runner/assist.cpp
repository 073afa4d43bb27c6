#include "judge/runner/assist.hpp"

#include <httplib.h>

#include <chrono>
#include <vector>

#include "judge/backend/errors.hpp"
#include "judge/backend/schemas.hpp"
#include "judge/runner/config.hpp"
#include "util/encoding.hpp"

namespace judge::runner {

using nlohmann::json;

namespace {

class RequestReader {
 public:
  std::vector<json> errors;

  void fail(const std::string& path, const std::string& message) {
    errors.push_back({{"path", path}, {"message", message}});
  }

  const json* object(const json& parent, const std::string& key, const std::string& path, bool required) {
    auto it = parent.find(key);
    if (it == parent.end()) {
      if (required) fail(path + "/" + key, "missing object");
      return nullptr;
    }
    if (!it->is_object()) {
      fail(path + "/" + key, "expected an object");
      return nullptr;
    }
    return &*it;
  }

  std::optional<std::string> string(const json& parent, const std::string& key, const std::string& path,
                                    bool required) {
    auto it = parent.find(key);
    if (it == parent.end()) {
      if (required) fail(path + "/" + key, "missing string");
      return std::nullopt;
    }
    if (!it->is_string()) {
      fail(path + "/" + key, "expected a string");
      return std::nullopt;
    }
    return it->get<std::string>();
  }

  model::Observation observation(const json& value, const std::string& path, model::Phase phase,
                                 std::size_t step) {
    model::Observation obs;
    obs.phase = phase;
    obs.step = step;
    if (!value.is_object()) {
      fail(path, "expected an observation object");
      return obs;
    }
    if (value.contains("image_path")) {
      fail(path + "/image_path", "the assist service does not read files; send image_base64");
    }
    obs.text = string(value, "text", path, false);
    if (auto encoded = string(value, "image_base64", path, false)) {
      if (auto bytes = util::base64_decode(*encoded); bytes && !bytes->empty()) {
        obs.image.inline_bytes = std::move(*bytes);
      } else {
        fail(path + "/image_base64", "not valid non-empty base64");
      }
    }
    if (!obs.text && obs.image.inline_bytes.empty() && !value.contains("image_base64")) {
      fail(path, "observation needs text or image_base64");
    }
    return obs;
  }

  std::optional<verify::Transition> transition(const json& value, const std::string& path) {
    if (!value.is_object()) {
      fail(path, "expected a transition object");
      return std::nullopt;
    }
    verify::Transition t;
    auto step = value.find("step");
    if (step == value.end() || !step->is_number_integer() || step->get<long long>() < 1) {
      fail(path + "/step", "expected an integer >= 1");
    } else {
      t.ordinal = step->get<std::size_t>();
    }
    if (auto it = value.find("pre"); it != value.end()) {
      t.pre = observation(*it, path + "/pre", model::Phase::Pre, t.ordinal);
    } else {
      fail(path + "/pre", "missing observation");
    }
    if (auto it = value.find("post"); it != value.end()) {
      t.post = observation(*it, path + "/post", model::Phase::Post, t.ordinal);
    } else {
      fail(path + "/post", "missing observation");
    }
    if (const json* action = object(value, "action", path, true)) {
      const std::string apath = path + "/action";
      t.action.action = string(*action, "action", apath, true).value_or("");
      t.action.target = string(*action, "target", apath, false).value_or("");
      t.action.thought = string(*action, "thought", apath, false).value_or("");
      if (auto hit = action->find("hit"); hit != action->end()) {
        if (hit->is_boolean()) {
          t.action.hit = hit->get<bool>();
        } else {
          fail(apath + "/hit", "expected a boolean");
        }
      }
    }
    return t;
  }
};

AssistResponse bad_request(std::vector<json> errors) {
  return {400, {{"error", "invalid request"}, {"violations", std::move(errors)}}};
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

AssistResponse AssistHandler::handle(std::string_view method, std::string_view path, std::string_view body) {
  if (path == "/healthz") {
    if (method != "GET") return {405, {{"error", "method not allowed"}}};
    return {200, {{"status", "ok"}, {"version", std::string(version())}, {"backend", std::string(backend_.kind())}}};
  }
  if (path != "/verify/display" && path != "/verify/interaction") return {404, {{"error", "not found"}}};
  if (method != "POST") return {405, {{"error", "method not allowed"}}};

  json request = json::parse(body, nullptr, false);
  if (request.is_discarded() || !request.is_object()) {
    return bad_request({{{"path", "/"}, {"message", "body is not a JSON object"}}});
  }

  RequestReader reader;
  const std::string expected_kind = path == "/verify/display" ? "display" : "interaction";
  if (auto kind = reader.string(request, "kind", "", false); kind && *kind != expected_kind) {
    reader.fail("/kind", "expected '" + expected_kind + "' for this endpoint");
  }
  const auto start = std::chrono::steady_clock::now();
  try {
    if (path == "/verify/display") {
      model::Observation obs;
      if (auto it = request.find("observation"); it != request.end()) {
        std::size_t step = 0;
        if (it->is_object() && it->contains("step") && (*it)["step"].is_number_unsigned()) {
          step = (*it)["step"].get<std::size_t>();
        }
        obs = reader.observation(*it, "/observation", model::Phase::Post, step);
      } else {
        reader.fail("/observation", "missing observation");
      }
      if (!reader.errors.empty()) return bad_request(std::move(reader.errors));
      const auto finding = backend_.verify_display_state(obs);
      return {200, {{"kind", "display"},
                    {"finding", backend::to_json_value(finding)},
                    {"latency_ms", elapsed_ms(start)},
                    {"backend", std::string(backend_.kind())}}};
    }

    model::NavigationTask task;
    if (const json* t = reader.object(request, "task", "", true)) {
      task.instruction = reader.string(*t, "instruction", "/task", true).value_or("");
      task.task_id = reader.string(*t, "task_id", "/task", false).value_or("");
      task.entry_point = reader.string(*t, "entry_point", "/task", false).value_or("");
    }
    model::TestBasis basis;
    if (const json* b = reader.object(request, "basis", "", false)) {
      basis.precondition = reader.string(*b, "precondition", "/basis", false).value_or("");
      basis.trigger = reader.string(*b, "trigger", "/basis", false).value_or("");
      basis.evidence = reader.string(*b, "evidence", "/basis", false).value_or("");
    }
    std::vector<verify::Transition> history;
    if (auto it = request.find("history"); it != request.end()) {
      if (!it->is_array()) {
        reader.fail("/history", "expected an array");
      } else {
        for (std::size_t i = 0; i < it->size(); ++i) {
          if (auto t = reader.transition((*it)[i], "/history/" + std::to_string(i))) history.push_back(*t);
        }
      }
    }
    std::optional<verify::Transition> current;
    if (auto it = request.find("transition"); it != request.end()) {
      current = reader.transition(*it, "/transition");
    } else {
      reader.fail("/transition", "missing transition");
    }
    if (!reader.errors.empty() || !current) return bad_request(std::move(reader.errors));
    history.push_back(*current);
    const auto finding = backend_.verify_interaction_transition(task, basis, history, *current);
    return {200, {{"kind", "interaction"},
                  {"finding", backend::to_json_value(finding)},
                  {"latency_ms", elapsed_ms(start)},
                  {"backend", std::string(backend_.kind())}}};
  } catch (const backend::BackendFailure& e) {
    return {502, {{"error", "backend failure"}, {"detail", e.what()}, {"latency_ms", elapsed_ms(start)}}};
  }
}

struct AssistServer::Impl {
  explicit Impl(backend::JudgeBackend& backend) : handler(backend) {}

  AssistHandler handler;
  httplib::Server server;
};

AssistServer::AssistServer(backend::JudgeBackend& backend) : impl_(std::make_unique<Impl>(backend)) {
  auto route = [this](const httplib::Request& req, httplib::Response& res) {
    AssistResponse out = impl_->handler.handle(req.method, req.path, req.body);
    res.status = out.status;
    res.set_content(out.body.dump(), "application/json");
  };
  impl_->server.Get("/healthz", route);
  impl_->server.Post("/verify/display", route);
  impl_->server.Post("/verify/interaction", route);
}

AssistServer::~AssistServer() { stop(); }

int AssistServer::bind(const std::string& host, int port) {
  if (port == 0) return impl_->server.bind_to_any_port(host);
  return impl_->server.bind_to_port(host, port) ? port : -1;
}

void AssistServer::serve() { impl_->server.listen_after_bind(); }

void AssistServer::stop() {
  if (impl_) impl_->server.stop();
}

}  // namespace judge::runner
